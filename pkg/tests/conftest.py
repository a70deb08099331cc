import hypothesis

hypothesis.settings.register_profile(
    "ltclab", deadline=None, max_examples=60, print_blob=True
)
hypothesis.settings.load_profile("ltclab")

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]
