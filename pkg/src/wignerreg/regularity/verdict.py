"""Regularity verdicts assembled from symbol nonvanishing and transfer rules.

A verdict carries a chain of rule applications. Every link records its input
and output operator; links that name a ``map`` satisfy
``MAPS[map](input) == output`` exactly. The chain runs from the operator
under study down to a base operator (pure multiplication or constant
coefficient), certifies the base symbol, then maps the base back up to the
original operator.

Transfer rules used:

* ``wigner_bar_transfer`` / ``wigner_tilde_transfer``: if ``B`` is regular
  for ``(Omega, Sigma)`` then ``Bbar`` / ``Btilde`` is regular for the
  derived pair ``(Omega_1, Sigma_1)``. One direction only.
* ``cohen_bar_transfer``: the same for the Cohen bar map of a kernel.
* ``cohen_tilde_equivalence``: ``B`` is regular iff its Cohen tilde image is.
* ``cohen_q1_equivalence``: ``B`` is regular iff ``(A B)~`` is, for a kernel
  with certified nonvanishing ``q``.

Pure multiplication and constant-coefficient operators are regular iff their
symbols never vanish on real points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from ..opalg.kernel import (
    KernelSpec,
    cohen_bar,
    cohen_bar_inverse,
    cohen_tilde,
    cohen_tilde_inverse,
    left_divide_fourier,
    q1_tilde,
)
from ..opalg.ncpoly import NCPolynomial
from ..opalg.substitution import wig_bar, wig_bar_inverse, wig_tilde, wig_tilde_inverse
from ..weights import WeightQuadruple, derive_weights
from .nonvanishing import DEFAULT_BOX, DEFAULT_DEPTH, NONVANISHING, ZERO_FOUND, Certificate, nonvanishing

MULTIPLICATION = "MULTIPLICATION"
CONSTANT_COEFFICIENT = "CONSTANT_COEFFICIENT"
MIXED = "MIXED"

REGULAR = "REGULAR"
NOT_REGULAR = "NOT_REGULAR"
UNKNOWN = "UNKNOWN"

RULE_INVERSE = "inverse_substitution"
RULE_FORWARD = "forward_substitution"
RULE_RECOGNIZE = "recognize_base"
RULE_MULT_SYMBOL = "multiplication_symbol_nonvanishing"
RULE_FOURIER_SYMBOL = "fourier_symbol_nonvanishing"
RULE_WIG_BAR = "wigner_bar_transfer"
RULE_WIG_TILDE = "wigner_tilde_transfer"
RULE_COHEN_BAR = "cohen_bar_transfer"
RULE_COHEN_TILDE = "cohen_tilde_equivalence"
RULE_Q1 = "cohen_q1_equivalence"

SYMBOL_RULES = (RULE_MULT_SYMBOL, RULE_FOURIER_SYMBOL)


def classify(P: NCPolynomial) -> str:
    """MULTIPLICATION if no derivatives, CONSTANT_COEFFICIENT if no (x, y) factors, else MIXED.

    The zero operator and constants count as MULTIPLICATION.
    """
    n2 = 2 * P.dim_n
    keys = list(P.terms)
    if all(not any(k[n2:]) for k in keys):
        return MULTIPLICATION
    if all(not any(k[:n2]) for k in keys):
        return CONSTANT_COEFFICIENT
    return MIXED


def _q1_inverse(P: NCPolynomial, k: KernelSpec) -> Optional[NCPolynomial]:
    """``B`` with ``q1_tilde(B) = P``: ``(A B)~ = q(Dx, Dy) Btilde``."""
    if k.q is None:
        return None
    inner = left_divide_fourier(P, k.q)
    return None if inner is None else cohen_tilde_inverse(inner, k)


MAPS: Dict[str, Callable[[NCPolynomial, Optional[KernelSpec]], Optional[NCPolynomial]]] = {
    "wig_bar": lambda P, k: wig_bar(P),
    "wig_tilde": lambda P, k: wig_tilde(P),
    "wig_bar_inverse": lambda P, k: wig_bar_inverse(P),
    "wig_tilde_inverse": lambda P, k: wig_tilde_inverse(P),
    "cohen_bar": cohen_bar,
    "cohen_tilde": cohen_tilde,
    "cohen_bar_inverse": cohen_bar_inverse,
    "cohen_tilde_inverse": cohen_tilde_inverse,
    "q1_tilde": q1_tilde,
    "q1_tilde_inverse": _q1_inverse,
}


@dataclass(frozen=True)
class ChainLink:
    rule: str
    input: NCPolynomial
    output: NCPolynomial
    map: Optional[str] = None
    statement: str = ""
    certificate: Optional[Certificate] = None

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "statement": self.statement,
            "map": self.map,
            "input": self.input.text(),
            "output": self.output.text(),
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


@dataclass(frozen=True)
class Verdict:
    status: str
    operator: NCPolynomial
    chain: Tuple[ChainLink, ...]
    weights: Tuple[WeightQuadruple, WeightQuadruple]
    witness: Optional[Tuple[float, ...]] = None
    kernel: Optional[KernelSpec] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def source(self) -> WeightQuadruple:
        return self.weights[0]

    @property
    def target(self) -> WeightQuadruple:
        return self.weights[1]

    def to_dict(self) -> dict:
        from ..cli.parser import kernel_text

        return {
            "status": self.status,
            "operator": self.operator.text(),
            "classification": classify(self.operator),
            "chain": [link.to_dict() for link in self.chain],
            "weights": {"source": self.source.spec(), "target": self.target.spec()},
            "witness": list(self.witness) if self.witness is not None else None,
            "kernel": kernel_text(self.kernel) if self.kernel is not None else None,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# base cases -----------------------------------------------------------------

def base_symbol(B: NCPolynomial):
    """``(kind, symbol)`` for a base operator, or None when ``B`` is MIXED."""
    kind = classify(B)
    if kind == MULTIPLICATION:
        return kind, B.multiplication_symbol()
    if kind == CONSTANT_COEFFICIENT:
        return kind, B.fourier_symbol()
    return None


def certify_base(B: NCPolynomial, box_radius: float, max_depth: int) -> Optional[Tuple[List[ChainLink], Certificate]]:
    found = base_symbol(B)
    if found is None:
        return None
    kind, sym = found
    cert = nonvanishing(sym, box_radius, max_depth)
    if kind == MULTIPLICATION:
        rule, text = RULE_MULT_SYMBOL, "a multiplication operator is regular iff its symbol has no real zero"
    else:
        rule, text = RULE_FOURIER_SYMBOL, "a constant-coefficient operator is regular iff its Fourier symbol has no real zero"
    links = [
        ChainLink(RULE_RECOGNIZE, B, B, None, f"base operator is {kind}"),
        ChainLink(rule, B, B, None, text, cert),
    ]
    return links, cert


# the ladder -----------------------------------------------------------------

@dataclass(frozen=True)
class _Route:
    inverse_map: str     # P -> base
    forward_map: str     # base -> P
    rule: str
    statement: str
    iff: bool


_WIGNER_ROUTES = (
    _Route("wig_tilde_inverse", "wig_tilde", RULE_WIG_TILDE,
           "regularity of B transfers to Btilde on the derived weights", False),
    _Route("wig_bar_inverse", "wig_bar", RULE_WIG_BAR,
           "regularity of B transfers to Bbar on the derived weights", False),
)

_COHEN_ROUTES = (
    _Route("cohen_tilde_inverse", "cohen_tilde", RULE_COHEN_TILDE,
           "B is regular iff its Cohen tilde image is regular on the derived weights", True),
    _Route("q1_tilde_inverse", "q1_tilde", RULE_Q1,
           "B is regular iff (A B)~ is regular on the derived weights", True),
    _Route("cohen_bar_inverse", "cohen_bar", RULE_COHEN_BAR,
           "regularity of B transfers to the Cohen bar image on the derived weights", False),
)

# P viewed as the source operator B of an equivalence: the image is the base
_COHEN_FORWARD = (
    _Route("q1_tilde", "q1_tilde_inverse", RULE_Q1,
           "B is regular iff (A B)~ is regular on the derived weights", True),
    _Route("cohen_tilde", "cohen_tilde_inverse", RULE_COHEN_TILDE,
           "B is regular iff its Cohen tilde image is regular on the derived weights", True),
)


def _try_route(P: NCPolynomial, route: _Route, k: Optional[KernelSpec], box_radius: float,
               max_depth: int, forward: bool = False):
    base = MAPS[route.inverse_map](P, k)
    if base is None:
        return None
    found = certify_base(base, box_radius, max_depth)
    if found is None:
        return None
    links, cert = found
    if cert.status == NONVANISHING:
        status = REGULAR
    elif cert.status == ZERO_FOUND and route.iff:
        status = NOT_REGULAR
    else:
        return None
    first_rule = RULE_FORWARD if forward else RULE_INVERSE
    first = ChainLink(first_rule, P, base, route.inverse_map, f"candidate base operator via {route.inverse_map}")
    last = ChainLink(route.rule, base, P, route.forward_map, route.statement)
    witness = cert.point if status == NOT_REGULAR else None
    return status, [first] + links + [last], witness


def verdict(P: NCPolynomial, q: WeightQuadruple, k: Optional[KernelSpec] = None,
            box_radius: float = DEFAULT_BOX, max_depth: int = DEFAULT_DEPTH) -> Verdict:
    """Decide regularity of ``P`` on the space given by ``q``; UNKNOWN when no rule applies."""
    if q.dim_n != P.dim_n:
        raise ValueError(f"weights describe N={q.dim_n}, operator has N={P.dim_n}")
    if k is not None and k.dim_n != P.dim_n:
        raise ValueError(f"kernel has N={k.dim_n}, operator has N={P.dim_n}")
    base_space = derive_weights(q)
    notes: List[str] = []

    # (1), (2): the operator itself is a base operator
    found = certify_base(P, box_radius, max_depth)
    if found is not None:
        links, cert = found
        if cert.status == NONVANISHING:
            return Verdict(REGULAR, P, tuple(links), (q, q), None, k)
        if cert.status == ZERO_FOUND:
            return Verdict(NOT_REGULAR, P, tuple(links), (q, q), cert.point, k)
        return Verdict(UNKNOWN, P, (), (q, q), None, k, ("symbol certification inconclusive",) + cert.notes)

    # (3) Wigner preimages
    for route in _WIGNER_ROUTES:
        got = _try_route(P, route, None, box_radius, max_depth)
        if got is not None:
            status, chain, witness = got
            return Verdict(status, P, tuple(chain), (base_space, q), witness, k)
    notes.append("no Wigner preimage is a certified base operator")

    # (4) Cohen routes
    if k is not None:
        q_ok = k.q is not None and (k.q_is_certified() or k.certify_q(box_radius, max_depth).q_is_certified())
        if k.q is not None and not q_ok:
            notes.append("q is not certified nonvanishing; the q-routes are skipped")
        for route in _COHEN_ROUTES:
            if route.rule == RULE_Q1 and not q_ok:
                continue
            got = _try_route(P, route, k, box_radius, max_depth)
            if got is not None:
                status, chain, witness = got
                return Verdict(status, P, tuple(chain), (base_space, q), witness, k)
        for route in _COHEN_FORWARD:
            if route.rule == RULE_Q1 and not q_ok:
                continue
            got = _try_route(P, route, k, box_radius, max_depth, forward=True)
            if got is not None:
                status, chain, witness = got
                # here P is the source operator: its space is the base of the derived pair
                return Verdict(status, P, tuple(chain), (base_space, q), witness, k)
        notes.append("no Cohen route reaches a certified base operator")

    return Verdict(UNKNOWN, P, (), (base_space, q), None, k, tuple(notes))


# chain checking ---------------------------------------------------------------

def replay_chain(v: Verdict) -> Optional[NCPolynomial]:
    """Rebuild the operator from the certified base by applying the maps after it."""
    chain = list(v.chain)
    idx = next((i for i, link in enumerate(chain) if link.rule in SYMBOL_RULES), None)
    if idx is None:
        return None
    op = chain[idx].input
    for link in chain[idx + 1:]:
        if link.map is not None:
            op = MAPS[link.map](op, v.kernel)
            if op is None:
                return None
    return op


def check_chain(v: Verdict) -> List[str]:
    """Problems found in the chain (empty when it is valid)."""
    problems = []
    if v.status != UNKNOWN and not v.chain:
        problems.append("empty chain for a decided verdict")
    prev = None
    for i, link in enumerate(v.chain):
        if prev is not None and link.input != prev:
            problems.append(f"link {i} input differs from link {i - 1} output")
        if link.map is not None:
            got = MAPS[link.map](link.input, v.kernel)
            if got != link.output:
                problems.append(f"link {i} map {link.map} does not produce its output")
        prev = link.output
    if v.chain:
        if v.chain[0].input != v.operator or v.chain[-1].output != v.operator:
            problems.append("chain does not start and end at the operator")
        if replay_chain(v) != v.operator:
            problems.append("replay does not reproduce the operator")
    return problems
