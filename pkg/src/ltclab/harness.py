"""Experiment orchestration: instance specs, sweeps, and structural checks.

Inline specification grammar (used by the CLI and the scripts)
--------------------------------------------------------------

Codes:
    rs:q=7,n=7,k=2        Reed-Solomon over GF(7)
    rep:q=2,n=3           repetition code
    full:q=2,n=3          the whole space
    gen:PATH / PATH.json  a generator-matrix code from a code-spec file
    SPEC^m                the m-fold tensor power of any of the above

Graphs:
    product:n=2,m=3       the axis test graph on [n]^m
    iterated:n=2,m=4,mp=2 composed axis test graphs (m-dim down to mp-dim)
    square:n=2,t=2        the recursive degree-n^2 family
    PATH.json             an explicit graph file {"n","m","t","lists"}

All randomness is derived from one integer seed; rerunning a configuration
with the same seed produces byte-identical JSON reports (wall-clock time is
printed to the console, never serialized).
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

import numpy as np

from .code import LinearCode, Word, full_code, make_generator_code, reed_solomon, repetition
from .corpus import generate_corpus, parse_corpus_spec
from .errors import TooLargeToEnumerateError
from .field import Field
from .reports import frac_decimal, frac_str, json_bytes, write_csv
from .tanner import (
    OrderedGraph,
    boundary_edge_count,
    check_expansion,
    iterated_graph,
    product_graph,
    square_test_graph,
    tpc_linear_code,
)
from .tensor import TensorCode, tensor_power
from .tester import TestInstance


# --- inline specs -------------------------------------------------------------


def _parse_kv(text: str) -> dict[str, int]:
    out = {}
    for item in text.split(","):
        if not item:
            continue
        key, _, val = item.partition("=")
        out[key.strip()] = int(val)
    return out


def parse_code_spec(text: str) -> Union[LinearCode, TensorCode]:
    """Parse an inline code spec, optionally raised to a tensor power."""
    text = text.strip()
    base_text, caret, power_s = text.rpartition("^")
    if caret and power_s.isdigit():
        base = parse_code_spec(base_text)
        if isinstance(base, TensorCode):
            raise ValueError("nested tensor powers are not supported")
        return tensor_power(base, int(power_s))
    if text.endswith(".json"):
        return load_code_file(text)
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind == "gen":
        return load_code_file(rest)
    kv = _parse_kv(rest)
    if kind == "rs":
        return reed_solomon(Field(kv["q"]), kv["n"], kv["k"])
    if kind == "rep":
        return repetition(Field(kv["q"]), kv["n"])
    if kind == "full":
        return full_code(Field(kv["q"]), kv["n"])
    raise ValueError(f"unknown code spec {text!r}")


def load_code_file(path: str) -> LinearCode:
    """Read a code-spec JSON file."""
    with open(path) as fh:
        doc = json.load(fh)
    field = Field(int(doc["field"]))
    kind = doc.get("kind", "generator")
    if kind == "reed_solomon":
        return reed_solomon(field, int(doc["n"]), int(doc["k"]))
    if kind == "generator":
        return make_generator_code(field, doc["generator"])
    raise ValueError(f"unknown code kind {kind!r} in {path}")


def code_to_json_dict(code: LinearCode, kind: str = "generator") -> dict:
    doc = {"field": code.field.q, "kind": kind, "n": code.n, "k": code.k}
    if kind != "reed_solomon":
        doc["generator"] = [[int(v) for v in row] for row in code.generator]
    return doc


def parse_graph_spec(text: str, budget=None) -> OrderedGraph:
    """Parse an inline graph spec or load an explicit graph file."""
    text = text.strip()
    if text.endswith(".json"):
        with open(text) as fh:
            doc = json.load(fh)
        graph = OrderedGraph.from_lists(int(doc["n"]), doc["lists"], label=text)
        if graph.m_right != int(doc["m"]) or graph.t_degree != int(doc["t"]):
            raise ValueError(f"graph file {text} is inconsistent with its lists")
        return graph
    kind, _, rest = text.partition(":")
    kv = _parse_kv(rest)
    if kind == "product":
        return product_graph(kv["n"], kv["m"], budget=budget)
    if kind == "iterated":
        return iterated_graph(kv["n"], kv["m"], kv["mp"], budget=budget)
    if kind == "square":
        return square_test_graph(kv["n"], kv["t"], budget=budget)
    raise ValueError(f"unknown graph spec {text!r}")


def parse_word_file(path: str, field: Field) -> Word:
    """Read a word file: a bare JSON array or a tensor-word document."""
    with open(path) as fh:
        doc = json.load(fh)
    if isinstance(doc, list):
        return Word(field, doc)
    if isinstance(doc, dict) and "symbols" in doc:
        if "field" in doc and int(doc["field"]) != field.q:
            raise ValueError(
                f"word file is over GF({doc['field']}), instance over GF({field.q})"
            )
        return Word(field, doc["symbols"])
    raise ValueError(f"unrecognized word file format in {path}")


# --- instances ------------------------------------------------------------------


def product_instance(base: LinearCode, m: int, threshold=None, budget=None) -> TestInstance:
    """The axis tester of the m-fold power of ``base``.

    Small code: the (m-1)-fold power (flattened); full code: the m-fold power,
    kept in factor form so its codewords enumerate through messages.
    """
    if m < 2:
        raise ValueError("need m >= 2 for an axis tester")
    graph = product_graph(base.n, m, budget=budget)
    small = tensor_power(base, m - 1).as_linear_code() if m > 2 else base
    full = tensor_power(base, m)
    label = f"product(base=[{base.n},{base.k},{base.d_known}]q{base.field.q},m={m})"
    return TestInstance(graph, small, full=full, label=label, threshold=threshold)


def instance_from_specs(
    graph_spec: str,
    small_spec: str,
    full_spec: Optional[str] = None,
    threshold=None,
    budget=None,
    derive_full_cells: int = 1 << 22,
) -> TestInstance:
    """Build a test instance from inline specs.

    Without an explicit full code, the Tanner product code of (graph, small)
    is derived by parity stacking when small enough; otherwise delta falls
    back to certified intervals.
    """
    graph = parse_graph_spec(graph_spec, budget=budget)
    small = parse_code_spec(small_spec)
    if isinstance(small, TensorCode):
        small = small.as_linear_code()
    full = None
    if full_spec:
        full = parse_code_spec(full_spec)
    else:
        try:
            full = tpc_linear_code(graph, small, max_cells=derive_full_cells)
        except (TooLargeToEnumerateError, ValueError):
            full = None
    label = f"{graph_spec} / {small_spec}"
    return TestInstance(graph, small, full=full, label=label, threshold=threshold)


# --- configuration ---------------------------------------------------------------


@dataclass
class ExperimentConfig:
    """Everything a sweep needs; the seed pins the corpus and any sampling."""

    graph_spec: str
    small_spec: str
    full_spec: Optional[str] = None
    corpus: str = "mixed:120"
    seed: int = 0
    alpha: Fraction = Fraction(1, 2**16)
    tau: Optional[Fraction] = None
    mode: str = "exact"  # exact | sampled
    samples: int = 200
    threshold: Optional[int] = None
    budget: Optional[int] = None
    out: Optional[str] = None
    fmt: str = "json"
    label: Optional[str] = None


@dataclass(frozen=True)
class SweepResult:
    summary: dict
    reports: list[dict]
    violations: int
    wall_time: float

    @property
    def exit_code(self) -> int:
        return 0 if self.violations == 0 else 1

    def document(self) -> dict:
        return {"summary": self.summary, "reports": self.reports}


def _hypotheses(full) -> Optional[dict]:
    """Which distance hypotheses the instance satisfies (factor form only)."""
    if not isinstance(full, TensorCode):
        return None
    factors = full.factors
    base = factors[0]
    if any(f is not base for f in factors) or base.d_known is None:
        return None
    n, d, m = base.n, base.d_known, len(factors)
    ratio_m = Fraction(d - 1, n) ** m
    checks = {
        "base": f"[{n},{base.k},{d}] over GF({base.field.q}), m={m}",
        "product_tester": bool(ratio_m >= Fraction(7, 8)),
        "product_tester_margin": frac_str(ratio_m),
        "self_improvement": bool(Fraction(d, n) ** (m - 1) >= Fraction(7, 8)),
        "composition_step": bool(d - 1 >= (1 - Fraction(1, 10 * m)) * n),
        "family": bool(Fraction(d, n) >= 1 - Fraction(1, 7 * m)),
    }
    return checks


def run_sweep(config: ExperimentConfig, instance: Optional[TestInstance] = None) -> SweepResult:
    """Certify every corpus word at the configured alpha.

    Returns per-word reports plus a summary with the violation count and the
    empirical minimum of rho/delta over words at positive distance.
    """
    t0 = time.perf_counter()
    if instance is None:
        instance = instance_from_specs(
            config.graph_spec,
            config.small_spec,
            config.full_spec,
            threshold=config.threshold,
            budget=config.budget,
        )
    parts = parse_corpus_spec(config.corpus)
    words = generate_corpus(instance, parts, config.seed)
    alpha = Fraction(config.alpha)
    reports = []
    violations = 0
    min_ratio: Optional[Fraction] = None
    undecided = 0
    for word, source in words:
        if config.mode == "sampled":
            est = instance.expected_robustness_sampled(word, config.seed + source["index"], config.samples)
            lower, upper, exact = instance.delta_bounds(word, None)
            rep_dict = {
                "instance": config.label or instance.label,
                "word_source": source,
                "rho_estimate": frac_str(est.value),
                "rho_stderr": f"{est.stderr:.6e}",
                "samples": est.samples,
                "alpha": frac_str(alpha),
                "delta": frac_str(lower) if exact else None,
                "estimate": True,
            }
            reports.append(rep_dict)
            continue
        report, holds = instance.certify(word, alpha, tau=config.tau, word_source=source)
        if config.label:
            report.label = config.label
        if holds is False:
            violations += 1
        elif holds is None:
            undecided += 1
        if report.delta_exact and report.ratio is not None:
            min_ratio = report.ratio if min_ratio is None else min(min_ratio, report.ratio)
        reports.append(report.to_json_dict())
    wall = time.perf_counter() - t0
    summary = {
        "instance": config.label or instance.label,
        "graph": config.graph_spec,
        "small": config.small_spec,
        "full": config.full_spec,
        "corpus": config.corpus,
        "seed": config.seed,
        "mode": config.mode,
        "alpha": frac_str(alpha),
        "words": len(words),
        "violations": violations,
        "undecided": undecided,
        "min_ratio": frac_str(min_ratio) if min_ratio is not None else None,
        "min_ratio_decimal": frac_decimal(min_ratio) if min_ratio is not None else None,
        "hypotheses": _hypotheses(instance.full),
    }
    return SweepResult(summary, reports, violations, wall)


# --- composition check --------------------------------------------------------------


def run_compose_check(
    outer: OrderedGraph,
    inner: OrderedGraph,
    small: LinearCode,
    corpus: str,
    seed: int,
    threshold=None,
) -> dict:
    """Exact two-level evaluation of the composed tester.

    For every corpus word, the expected robustness over the composed graph
    must equal the mean over outer views of the inner tester's expected
    robustness on that view; the two sides are computed along independent
    paths (composed adjacency vs nested projection).  Also reports the
    empirical robustness constants of the outer, inner, and composed testers.
    """
    t0 = time.perf_counter()
    composed = outer.compose(inner)
    medium = tpc_linear_code(inner, small)
    full = tpc_linear_code(outer, medium)
    comp_instance = TestInstance(composed, small, full=full, threshold=threshold, label="composed")
    outer_instance = TestInstance(outer, medium, full=full, threshold=threshold, label="outer")
    inner_instance = TestInstance(inner, small, full=medium, threshold=threshold, label="inner")
    words = generate_corpus(comp_instance, parse_corpus_spec(corpus), seed)
    mismatches = 0
    field = small.field
    mins = {"outer": None, "inner": None, "composed": None}

    def _update(key, ratio):
        if ratio is not None:
            mins[key] = ratio if mins[key] is None else min(mins[key], ratio)

    for word, _ in words:
        lhs = comp_instance.expected_robustness(word)
        inner_means = []
        for j0 in range(outer.m_right):
            view = Word(field, outer.view(word.values, j0 + 1))
            inner_means.append(inner_instance.expected_robustness(view))
            dv = inner_instance.delta_exact(view)
            if dv != 0:
                _update("inner", inner_means[-1] / dv)
        rhs = sum(inner_means, Fraction(0)) / outer.m_right
        if lhs != rhs:
            mismatches += 1
        d = comp_instance.delta_exact(word)
        if d != 0:
            _update("composed", lhs / d)
            _update("outer", outer_instance.expected_robustness(word) / d)
    wall = time.perf_counter() - t0
    report = {
        "outer": outer.label,
        "inner": inner.label,
        "composed": composed.label,
        "corpus": corpus,
        "seed": seed,
        "words": len(words),
        "identity_mismatches": mismatches,
        "measured_c_outer": frac_str(mins["outer"]) if mins["outer"] is not None else None,
        "measured_c_inner": frac_str(mins["inner"]) if mins["inner"] is not None else None,
        "measured_c_composed": frac_str(mins["composed"]) if mins["composed"] is not None else None,
    }
    return {"report": report, "wall_time": wall, "exit_code": 0 if mismatches == 0 else 1}


# --- expansion check -----------------------------------------------------------------


def run_expansion_check(
    graph: OrderedGraph,
    mode: str = "exhaustive",
    samples: int = 10**5,
    seed: int = 0,
) -> dict:
    """Boundary-expansion scan over (S, T) pairs.

    Exhaustive mode enumerates every left subset S with |S| <= n/4 and every
    right subset T; sampled mode draws seeded random pairs.  Reports the
    number of violations of the 1/8 bound and the worst slack seen.
    """
    t0 = time.perf_counter()
    n, m = graph.n_left, graph.m_right
    d_l = graph.uniform_left_degree()
    d_r = graph.t_degree
    worst_slack: Optional[Fraction] = None
    violations = 0
    checked = 0
    if mode == "exhaustive":
        smax = n // 4
        count_s = sum(math.comb(n, s) for s in range(smax + 1))
        if count_s * (2**m) > 10**7:
            raise TooLargeToEnumerateError(
                f"{count_s} left subsets x {2**m} right subsets is too many"
            )
        t_masks = [
            np.array([(bits >> j) & 1 for j in range(m)], dtype=bool)
            for bits in range(2**m)
        ]
        for s_size in range(smax + 1):
            for s_tuple in combinations(range(1, n + 1), s_size):
                for t_mask in t_masks:
                    t_set = [j + 1 for j in range(m) if t_mask[j]]
                    result = check_expansion(graph, s_tuple, t_set)
                    checked += 1
                    if not result.holds:
                        violations += 1
                    slack = result.slack
                    worst_slack = slack if worst_slack is None else min(worst_slack, slack)
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        smax = n // 4
        sizes = rng.integers(0, smax + 1, size=samples)
        s_masks = np.zeros((samples, n), dtype=bool)
        for i, size in enumerate(sizes):
            if size:
                s_masks[i, rng.choice(n, size=int(size), replace=False)] = True
        t_masks = rng.integers(0, 2, size=(samples, m)).astype(bool)
        for i in range(samples):
            gamma = boundary_edge_count(graph, s_masks[i], t_masks[i])
            s_size = int(s_masks[i].sum())
            t_size = int(t_masks[i].sum())
            bound = Fraction(d_l * s_size + d_r * t_size, 8)
            checked += 1
            if Fraction(gamma) < bound:
                violations += 1
            slack = Fraction(gamma) - bound
            worst_slack = slack if worst_slack is None else min(worst_slack, slack)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    wall = time.perf_counter() - t0
    report = {
        "graph": graph.label,
        "mode": mode,
        "seed": seed if mode == "sampled" else None,
        "pairs_checked": checked,
        "violations": violations,
        "worst_slack": frac_str(worst_slack) if worst_slack is not None else None,
        "left_degree": d_l,
        "right_degree": d_r,
    }
    return {"report": report, "wall_time": wall, "exit_code": 0 if violations == 0 else 1}


# --- query accounting -----------------------------------------------------------------


@dataclass(frozen=True)
class QueryAccount:
    """Query bookkeeping for the degree-n^2 recursive tester family."""

    n: int
    t: int
    alpha0: Fraction
    queries: int  # per-invocation query count = n^2
    repetitions: int  # ceil(1 / alpha0^t)
    total: int
    block_length: Optional[int]  # n^(2^t) when it fits; None otherwise
    log2_block_length: float
    polylog_exponent: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "alpha0": frac_str(self.alpha0),
            "queries": self.queries,
            "repetitions": str(self.repetitions),
            "total_queries": str(self.total),
            "block_length": self.block_length,
            "log2_block_length": self.log2_block_length,
            "polylog_exponent": self.polylog_exponent,
        }


def query_account(n: int, t: int, alpha0: Fraction) -> QueryAccount:
    """Exact query counts after robustness amplification, computed in log space.

    The per-invocation cost is the right degree n^2; the composed tester's
    robustness constant is alpha0^t, so ceil(1/alpha0^t) repetitions drive the
    rejection probability up to the delta/2 floor.  The polylog exponent e
    satisfies total = (log2 N)^e for block length N = n^(2^t).
    """
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    alpha0 = Fraction(alpha0)
    if not 0 < alpha0 <= 1:
        raise ValueError("alpha0 must lie in (0, 1]")
    q = n * n
    level = alpha0**t
    reps = -(-level.denominator // level.numerator)  # ceil(1/alpha0^t)
    total = q * reps
    log2_n_big = (2**t) * math.log2(n)
    block = n ** (2**t) if log2_n_big <= 62 else None
    # math.log2 takes arbitrarily large Python ints without overflow.
    polylog_exp = math.log2(total) / math.log2(log2_n_big) if log2_n_big > 1 else float("inf")
    return QueryAccount(
        n=n,
        t=t,
        alpha0=alpha0,
        queries=q,
        repetitions=reps,
        total=total,
        block_length=block,
        log2_block_length=log2_n_big,
        polylog_exponent=polylog_exp,
    )


# --- output helpers ---------------------------------------------------------------------


def emit_document(doc, out: Optional[str], fmt: str = "json", reports_key: str = "reports") -> str:
    """Serialize a result document; returns what was written (for stdout use)."""
    if fmt == "csv":
        if out is None:
            raise ValueError("CSV output requires an output path")
        rows = doc.get(reports_key, []) if isinstance(doc, dict) else doc
        write_csv(out, rows)
        return f"wrote {len(rows)} rows to {out}"
    blob = json_bytes(doc)
    if out:
        with open(out, "wb") as fh:
            fh.write(blob)
        return f"wrote {out}"
    return blob.decode("utf-8")
