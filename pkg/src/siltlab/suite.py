"""The ten end-to-end checks on ``lambda0`` and the two linear fixtures.

Each check returns a :class:`CriterionResult`; ``run_suite`` collects them.
The CLI command ``verify-example7`` and ``tests/test_acceptance.py`` both go
through this module, so they always agree.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .bijections import duality_defects, phi12_rickard, phi21, verify_order_iso
from .complexes import (
    ChainMap,
    HomComplex,
    ProjComplex,
    decompose,
    direct_sum,
    end_algebra,
    is_isomorphic,
    minimize,
    shift,
)
from .derived import as_proj, hom_derived, nakayama_inv_any, proj_to_module, stalk, twist
from .errors import HypothesisFailed
from .examples import (
    FIXTURES,
    b_family,
    l_family,
    lambda0,
    p1_family,
    pattern_ball,
    r_family,
)
from .linalg import radical
from .modules import bb_tilting, simple, standard_modules
from .silting import SiltingObject, mutate, order_leq, same_object, silting_certificate, silting_quiver
from .smc import SMCollection, smc_check, smc_mutate

WINDOW = range(-8, 9)


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:2d}. {self.title} ({self.seconds:.2f}s)"

    def as_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "status": "pass" if self.ok else "fail",
            "details": self.details,
        }


def _table(X: ProjComplex, Y: ProjComplex) -> dict:
    H = HomComplex(X, Y)
    return {m: H.dim(m) for m in WINDOW if H.dim(m)}


def _ones(ms) -> dict:
    return {m: 1 for m in ms}


@lru_cache(maxsize=None)
def ball(radius: int):
    return silting_quiver(SiltingObject.regular(lambda0()), radius)


# ---------------------------------------------------------------------------


def check_hom_tables() -> CriterionResult:
    A = lambda0()
    P2 = ProjComplex.stalk(A, (1,))
    bad = []
    for n in range(5):
        R, L = r_family(n), l_family(n)
        cases = [
            ("Hom(P2, R(n))", _table(P2, R), _ones(range(-n, 1))),
            ("Hom(R(n), P2)", _table(R, P2), _ones(range(2, n + 1)) | ({0: 1} if n == 0 else {})),
            ("Hom(P2, L(n))", _table(P2, L), _ones(range(2 - n, 1)) | ({0: 1} if n == 0 else {})),
            ("Hom(L(n), P2)", _table(L, P2), _ones(range(0, n + 1))),
        ]
        for name, got, want in cases:
            if got != want:
                bad.append({"n": n, "table": name, "got": got, "want": want})
    return CriterionResult(1, "Hom tables for R(n), L(n) against P_2", not bad, {"mismatches": bad})


def check_spherical_patterns() -> CriterionResult:
    A = lambda0()
    P1 = ProjComplex.stalk(A, (0,))
    t1 = _table(P1, P1)
    alg, basis, _ = end_algebra(P1)
    rad = radical(alg)
    square_zero = False
    if len(rad) == 1:
        square_zero = not any(alg.mul(rad[0], rad[0]))
    S2 = stalk(simple(A, 1))
    got = hom_derived(S2, S2, WINDOW)
    t2 = {m: got[m] for m in WINDOW if got[m]}
    ok = t1 == {0: 2} and square_zero and t2 == {0: 1, 2: 1}
    return CriterionResult(
        2,
        "graded self-Homs of P_1 and S_2",
        ok,
        {"P1": t1, "P1_radical_square_zero": square_zero, "S2": t2},
    )


def check_twists() -> CriterionResult:
    A = lambda0()
    P1, P2 = ProjComplex.stalk(A, (0,)), ProjComplex.stalk(A, (1,))
    S1, S2 = l_family(1), b_family(1)
    rows = [
        ("Phi_P1(S1) = Sigma P2", twist(P1, S1), shift(P2, 1)),
        ("Phi_P1(P1) = Sigma P1", twist(P1, P1), shift(P1, 1)),
        ("Phi_P1(S2) = S2", twist(P1, S2), S2),
        ("Phi_S2(S1) = P2", twist(S2, S1), P2),
        ("Phi_S2(P1) = P1", twist(S2, P1), P1),
        ("Phi_S2(S2) = Sigma^-1 S2", twist(S2, S2), shift(S2, -1)),
    ]
    for name, X in (("P1", P1), ("P2", P2), ("S1", S1), ("S2", S2), ("R(2)", r_family(2))):
        lhs = twist(P1, twist(P1, X))
        rhs = nakayama_inv_any(proj_to_module(shift(X, 2)))
        rows.append((f"Phi_P1^2({name}) = nu^-1 Sigma^2 {name}", lhs, rhs))
    results = {name: is_isomorphic(a, b) for name, a, b in rows}
    return CriterionResult(3, "spherical twist identities", all(results.values()), results)


def check_quiver() -> CriterionResult:
    import networkx as nx

    Q = ball(3)
    G = Q.to_networkx()
    nodes, edges = pattern_ball(3)
    H = nx.DiGraph()
    for v in nodes:
        H.add_node(v, root=v == (0, 0, 0))
    H.add_edges_from(edges)
    iso = nx.is_isomorphic(G, H, node_match=lambda a, b: a["root"] == b["root"])
    # two left mutations per node, pairwise non-isomorphic (targets may lie outside the ball)
    two_out = True
    for nd in Q.nodes:
        fps = [fp for _, fp in Q.out_targets[nd.key]]
        if len(fps) != 2:
            two_out = False
        elif fps[0] == fps[1] and same_object(mutate(nd.obj, 0, "+"), mutate(nd.obj, 1, "+")):
            two_out = False
    details = {
        "nodes": len(Q.nodes),
        "edges": len(Q.edges),
        "pattern_nodes": len(nodes),
        "pattern_edges": len(edges),
        "isomorphic": iso,
        "two_outgoing_everywhere": two_out,
    }
    return CriterionResult(4, "silting quiver ball of radius 3", iso and two_out, details)


def check_involution() -> CriterionResult:
    bad = []
    for nd in ball(3).nodes:
        M = nd.obj
        for i in range(len(M.summands)):
            if not same_object(mutate(mutate(M, i, "+"), i, "-"), M):
                bad.append((nd.key, i + 1, "+-"))
            if not same_object(mutate(mutate(M, i, "-"), i, "+"), M):
                bad.append((nd.key, i + 1, "-+"))
    return CriterionResult(5, "mutation is an involution on the radius-3 ball", not bad, {"failures": bad})


@lru_cache(maxsize=None)
def _partners(radius: int) -> tuple:
    return tuple(phi21(nd.obj, verify=False) for nd in ball(radius).nodes)


def check_duality() -> CriterionResult:
    bad = []
    nodes = ball(2).nodes
    for nd, C in zip(nodes, _partners(2)):
        d = duality_defects(nd.obj, C)
        if d:
            bad.append({"node": nd.key, "defects": [list(map(str, x)) for x in d[:3]]})
    return CriterionResult(6, "Hom duality on the radius-2 ball", not bad, {"checked": len(nodes), "failures": bad})


def check_rickard() -> CriterionResult:
    bad = []
    stages = []
    nodes = ball(2).nodes
    for nd, C in zip(nodes, _partners(2)):
        res = phi12_rickard(C, cap=32, coresolution_cap=32, report=True)
        stages.append(max(res.stages))
        if not res.ok or not same_object(res.silting, nd.obj):
            bad.append(nd.key)
    simples = {}
    for name, make in FIXTURES.items():
        A = make()
        M = phi12_rickard(SMCollection.simples(A))
        simples[name] = same_object(M, SiltingObject.regular(A))
    ok = not bad and all(simples.values())
    details = {"ball_failures": bad, "max_stage": max(stages), "simples_to_regular": simples}
    return CriterionResult(7, "Rickard round trip", ok, details)


def check_bb() -> CriterionResult:
    accepted, rejected, bad = [], [], []
    for name, make in FIXTURES.items():
        A = make()
        L = SiltingObject.regular(A)
        for i in range(A.n):
            label = A.quiver.vertices[i]
            try:
                T, _, cert = bb_tilting(A, i)
            except HypothesisFailed as exc:
                rejected.append(f"{name}:{label} ({exc.bullet})")
                continue
            parts = decompose(minimize(as_proj(T)))
            stalks = SiltingObject(A, tuple(parts))
            same = same_object(stalks, mutate(L, i, "+"))
            accepted.append(f"{name}:{label}")
            if not (same and cert.ok):
                bad.append({"case": f"{name}:{label}", "matches_mutation": same, "tilting": cert.ok})
    ok = bool(accepted) and not bad
    return CriterionResult(
        8, "BB tilting agrees with left mutation", ok, {"accepted": accepted, "rejected": rejected, "failures": bad}
    )


def check_order(pairs: int = 30, seed: int = 7) -> CriterionResult:
    nodes = ball(2).nodes
    partners = {id(nd.obj): C for nd, C in zip(nodes, _partners(2))}
    rng = random.Random(seed)
    all_pairs = [(a, b) for a in range(len(nodes)) for b in range(len(nodes))]
    chosen = rng.sample(all_pairs, pairs)
    report = verify_order_iso([(nodes[a].obj, nodes[b].obj) for a, b in chosen], partners=partners)
    comparable = sum(1 for c in report.checks if c.witness["silting"])
    down = []
    for nd in nodes:
        for i in range(len(nd.obj.summands)):
            if not order_leq(nd.obj, mutate(nd.obj, i, "+")):
                down.append((nd.key, i + 1))
    ok = report.ok and not down
    details = {
        "pairs": pairs,
        "comparable_pairs": comparable,
        "disagreements": [c.as_dict() for c in report.failures()],
        "left_mutation_not_below": down,
    }
    return CriterionResult(9, "order isomorphism and left mutation moves down", ok, details)


def check_invariants() -> CriterionResult:
    problems = []
    # silting and SMC cardinalities, end dimensions under SMC mutation
    for name, make in FIXTURES.items():
        A = make()
        Q = ball(2) if name == "lambda0" else silting_quiver(SiltingObject.regular(A), 2)
        for nd in Q.nodes:
            M = nd.obj
            if not silting_certificate(M).ok or len(M.summands) != A.n:
                problems.append(f"{name}: silting node {nd.key}")
            C = _partners(2)[nd.key] if name == "lambda0" else phi21(M)
            if len(C) != A.n:
                problems.append(f"{name}: SMC size at node {nd.key}")
            if nd.distance <= 1:
                smc_check(C)
                for i in range(A.n):
                    for s in "+-":
                        D = smc_mutate(C, i, s)
                        if sorted(D.end_dims) != sorted(C.end_dims) or len(D) != A.n:
                            problems.append(f"{name}: end dims at node {nd.key}, {i + 1}{s}")
    # minimisation
    A = lambda0()
    P1 = ProjComplex.stalk(A, (0,))
    from .complexes import cone

    samples = [r_family(2), l_family(3), b_family(2), p1_family(3)]
    samples.append(direct_sum([r_family(1), cone(ChainMap.identity(P1))]))
    for X in samples:
        Y, f, g = minimize(X, with_maps=True)
        if minimize(Y).signature() != Y.signature() or not is_isomorphic(X, Y):
            problems.append(f"minimize on {X}")
        HX, HY = HomComplex(X, X), HomComplex(Y, Y)
        idx = ChainMap.identity(X).plus(g.compose(f), -1)
        idy = ChainMap.identity(Y).plus(f.compose(g), -1)
        if not (HX.is_boundary(idx) and HY.is_boundary(idy)):
            problems.append(f"minimize maps on {X}")
    # margin stability of derived Hom
    for name, make in FIXTURES.items():
        A = make()
        mods = standard_modules(A)
        objs = mods["S"] + mods["I"]
        for M in objs:
            for N in objs:
                h2 = hom_derived(stalk(M), stalk(N), WINDOW, margin=2)
                h3 = hom_derived(stalk(M), stalk(N), WINDOW, margin=3)
                if h2.dims != h3.dims:
                    problems.append(f"{name}: margin instability")
    return CriterionResult(10, "structural invariants", not problems, {"problems": problems})


CHECKS = [
    check_hom_tables,
    check_spherical_patterns,
    check_twists,
    check_quiver,
    check_involution,
    check_duality,
    check_rickard,
    check_bb,
    check_order,
    check_invariants,
]


def run_check(k: int) -> CriterionResult:
    t = time.perf_counter()
    res = CHECKS[k - 1]()
    res.seconds = time.perf_counter() - t
    return res


def run_suite() -> list[CriterionResult]:
    return [run_check(k) for k in range(1, len(CHECKS) + 1)]
