"""Exactness certificates for formal group laws over presented local rings.

The criterion in play: over a p-local base, read the p-series coefficients
v_0 = p, v_1, v_2, ... of a law and ask that (p, v_1, ..., v_{h-1}) act as a
regular sequence with v_h a unit, where h is the height of the closed fibre.
When that holds the law is exact (it defines a homology theory via the usual
base-change functor); when an element is a zerodivisor it is not; and when
the finite window cannot decide, the verdict says so instead of guessing.

Regularity is checked on presented rings: a prime p, formal parameters
t_1..t_k truncated at a total degree cap, and optional relations. The
presentation denotes the (p-local) polynomial ring observed through the
degree window, so truncation is never allowed to manufacture zerodivisors:
a torsion witness only counts when its defining product stayed inside the
window. The checker is deliberately scoped to the shapes that actually
arise from group laws - constants, fresh linear parameters, units, and
explicit torsion - and answers Unknown elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _iproduct

from . import __version__
from .coefficients import (
    QQ,
    Prime,
    TruncPoly,
    TruncPolyRing,
    rat,
    val_p,
)
from .errors import (
    CapTooSmall,
    CertificationRefused,
    RingMismatch,
    SmoothnessCheckFailed,
)
from .fgl import (
    FormalGroupLaw,
    Logarithm,
    fgl_from_log,
    hazewinkel_log,
    height,
    ideal_contains,
    landweber_chain,
    p_series,
    standard_law,
)
from .k3brauer import QuarticForm, smooth_check_fp, stienstra_log

# ---------------------------------------------------------------------------
# ring presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingPresentation:
    """A p-local base ring given by generators and relations: parameters
    t_1..t_k truncated at total degree `cap`, modulo `relations`.

    No parameters and no relations is the p-local integers; no relations at
    all is a polynomial ring over them, torsion-free by construction."""

    prime: Prime
    parameters: tuple = ()
    cap: int = 8
    relations: tuple = ()
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.prime, Prime):
            object.__setattr__(self, "prime", Prime(int(self.prime)))
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.cap < 1:
            raise ValueError("presentation cap must be >= 1")

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def base_ring(self):
        """Coefficient ring elements live in: rationals when parameter-free,
        a truncated polynomial ring otherwise. p-locality is enforced by the
        membership tests, not by the element arithmetic."""
        if self.parameters:
            return TruncPolyRing(self.parameters, self.cap)
        return QQ

    def coerce(self, x):
        if isinstance(self.base_ring, TruncPolyRing):
            return self.base_ring.coerce(x)
        if isinstance(x, TruncPoly):
            raise RingMismatch(
                f"polynomial element in parameter-free presentation {self}")
        return QQ.coerce(x)

    @property
    def torsion_free(self) -> bool:
        """Declared torsion-freeness: decidable for the relation shapes
        accepted here. A relation whose smallest coefficient valuation is
        positive introduces p-torsion (p^k * rest = 0 with rest nonzero)."""
        for r in self.relations:
            r = self.coerce(r)
            if isinstance(r, TruncPoly):
                vals = [val_p(c, self.prime) for c in r.terms.values()]
            else:
                vals = [val_p(r, self.prime)]
            if vals and min(vals) > 0:
                return False
        return True

    def describe(self) -> str:
        params = "".join(f"[{t}]" for t in self.parameters)
        rels = ", ".join(str(self.coerce(r)) for r in self.relations)
        body = f"Z_({self.p})-local{params}, degree cap {self.cap}"
        return f"{body} / ({rels})" if rels else body

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "parameters": list(self.parameters),
            "cap": self.cap,
            "relations": [str(self.coerce(r)) for r in self.relations],
            "torsion_free": self.torsion_free,
            "description": self.describe(),
        }

    def __repr__(self):
        return self.name or self.describe()


def zp_presentation(p, cap: int = 8, name: str = "") -> RingPresentation:
    return RingPresentation(Prime(int(p)), (), cap, (), name or f"Z_({int(p)})")


# ---------------------------------------------------------------------------
# regular sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegularityVerdict:
    """Outcome for one element of a would-be regular sequence. A zerodivisor
    verdict always carries its witness: a nonzero element annihilating the
    tested one."""

    status: str  # "regular" | "zerodivisor" | "unit" | "unknown"
    element: str
    witness: str | None = None
    reason: str = ""

    def __post_init__(self):
        if self.status not in ("regular", "zerodivisor", "unit", "unknown"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "zerodivisor" and self.witness is None:
            raise ValueError("zerodivisor verdict needs a witness")

    def to_json_dict(self) -> dict:
        return {"element": self.element, "status": self.status,
                "witness": self.witness, "reason": self.reason}


def _contains(R: RingPresentation, gens, x) -> bool:
    return ideal_contains(gens, x, R.prime, R.base_ring)


def _is_unit_mod(R: RingPresentation, gens, x) -> bool:
    one = R.base_ring.one if R.parameters else rat(1)
    return _contains(R, list(gens) + [x], one)


def _linear_fresh_parameter(R: RingPresentation, x: TruncPoly, consumed: set):
    """Name of a parameter whose linear coefficient in x is a p-unit and that
    no earlier element consumed; None when there is no such parameter."""
    for i, t in enumerate(R.parameters):
        if t in consumed:
            continue
        e = tuple(1 if j == i else 0 for j in range(len(R.parameters)))
        c = x.terms.get(e)
        if c is not None and val_p(c, R.prime) == 0:
            return t
    return None


def _torsion_witness(R: RingPresentation, gens, x):
    """Search for nonzero y with x*y in (gens) and y itself outside (gens).
    Candidates are p-powers times monomials up to half the cap. A witness is
    only accepted when the product x*y did not hit the truncation boundary;
    otherwise the vanishing could be an artifact of the window."""
    p = R.p
    if R.parameters:
        ring = R.base_ring
        half = R.cap // 2
        exps = [e for e in _iproduct(range(half + 1), repeat=len(R.parameters))
                if sum(e) <= half]
        x = ring.coerce(x)
        if getattr(x, "truncated", False):
            return None  # the element's own tail is unknown; stay honest
        for a in range(0, 4):
            for e in exps:
                y = ring.monomial(e, p ** a)
                if _contains(R, gens, y):
                    continue
                prod = x * y
                if prod.truncated:
                    continue
                if _contains(R, gens, prod):
                    return y
        return None
    x = QQ.coerce(x)
    for a in range(0, 7):
        y = rat(p ** a)
        if _contains(R, gens, y):
            continue
        if _contains(R, gens, x * y):
            return y
    return None


def check_regular_sequence(R: RingPresentation, elems) -> list:
    """Classify each element against the ideal of relations plus all earlier
    elements. The certified shapes:

      * anything congruent to 0: zerodivisor (witness 1);
      * units modulo the earlier ideal: Unit;
      * nonzero constants on relation-free presentations: Regular
        (multiplication by a nonzero scalar is injective on a free module);
      * elements whose linear part holds a fresh parameter with p-unit
        coefficient, when everything earlier was of these shapes: Regular
        (a coordinate change makes the element that parameter);
      * explicit torsion found by the bounded search: Zerodivisor;

    and Unknown with a reason for everything else."""
    verdicts = []
    gens = [R.coerce(r) for r in R.relations]
    consumed: set = set()
    shapes_ok = True  # all earlier elements within the certified shapes
    one = R.base_ring.one if R.parameters else rat(1)
    if _contains(R, gens, one):
        return [RegularityVerdict("unknown", str(R.coerce(x)),
                                  reason="presentation collapses to the zero ring")
                for x in elems]
    for raw in elems:
        x = R.coerce(raw)
        label = str(x)
        if _contains(R, gens, x):
            verdicts.append(RegularityVerdict(
                "zerodivisor", label, witness=str(one),
                reason="element is 0 in the quotient; 0 is never regular"))
            shapes_ok = False
        elif _is_unit_mod(R, gens, x):
            verdicts.append(RegularityVerdict(
                "unit", label,
                reason="1 lies in the ideal generated by this element and "
                       "its predecessors"))
        elif not R.parameters and not R.relations:
            # nonzero rational constant on the p-local integers
            verdicts.append(RegularityVerdict(
                "regular", label,
                reason="nonzero scalar on a torsion-free base"))
        elif R.parameters and not R.relations and x.total_degree() == 0:
            verdicts.append(RegularityVerdict(
                "regular", label,
                reason="nonzero scalar on a free polynomial base"))
        elif (R.parameters and not R.relations and shapes_ok
              and (t := _linear_fresh_parameter(R, x, consumed)) is not None):
            consumed.add(t)
            verdicts.append(RegularityVerdict(
                "regular", label,
                reason=f"linear part contains fresh parameter {t} with "
                       f"p-unit coefficient"))
        else:
            w = _torsion_witness(R, gens, x)
            if w is not None:
                verdicts.append(RegularityVerdict(
                    "zerodivisor", label, witness=str(w),
                    reason="explicit annihilation found within the window"))
                shapes_ok = False
            else:
                verdicts.append(RegularityVerdict(
                    "unknown", label,
                    reason="outside the certified shapes (constants, fresh "
                           "linear parameters, units) and no torsion found"))
                shapes_ok = False
        gens.append(x)
    return verdicts


# ---------------------------------------------------------------------------
# exactness reports
# ---------------------------------------------------------------------------

OTHER_PRIMES_NOTE = ("primes q != p are invertible in the p-local presentation;"
                     " q-regularity is automatic and not rechecked")


@dataclass
class LandweberReport:
    """Everything the exactness verdict rests on, in checkable form."""

    p: Prime
    ring: RingPresentation
    closed_fibre_height: object  # HeightResult
    vs: list = field(default_factory=list)
    chain_generators: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    stabilization: int | None = None
    verdict: str = "inconclusive"  # "exact" | "not_exact" | "inconclusive"
    reason: str = ""
    note_other_primes: str = OTHER_PRIMES_NOTE

    def to_json_dict(self) -> dict:
        h = self.closed_fibre_height
        return {
            "p": self.p.p,
            "ring": self.ring.to_json_dict(),
            "closed_fibre_height": {
                "kind": h.kind,
                "value": h.value,
                "first_nonzero_degree": h.first_nonzero_degree,
            },
            "vs": [str(v) for v in self.vs],
            "chain_generators": [[str(g) for g in gens]
                                 for gens in self.chain_generators],
            "verdicts": [v.to_json_dict() for v in self.verdicts],
            "stabilization": self.stabilization,
            "verdict": self.verdict,
            "reason": self.reason,
            "note_other_primes": self.note_other_primes,
        }


def landweber_check(R: RingPresentation, source, h_max: int,
                    cap: int | None = None) -> LandweberReport:
    """Exactness verdict for a law or logarithm over the presentation R.

    Computes the p-series, reduces it at the closed point (parameters to 0,
    then mod p) to find the height h of the closed fibre, and classifies
    (p, v_1, ..., v_h): Exact requires Regular all the way up with v_h a
    Unit. A window that never shows a unit yields Inconclusive, because a
    larger cap could still reveal one; torsion yields NotExact with its
    witness on display."""
    p = R.prime
    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    if cap is None:
        cap = p.p ** h_max + 1
    if cap < p.p ** h_max:
        raise CapTooSmall(
            f"cap {cap} < p^h_max = {p.p ** h_max}; no verdict window")
    if isinstance(source, (Logarithm, FormalGroupLaw)):
        ring = source.ring
    else:
        raise RingMismatch(f"cannot run exactness on {type(source)}")
    if R.parameters:
        if ring != R.base_ring:
            raise RingMismatch(
                f"law ring {ring} does not match presentation {R.base_ring}")
    elif ring != QQ:
        raise RingMismatch(
            "parameter-free presentations expect rational coefficients")
    ps = p_series(source, p, cap)
    red = ps.reduce()  # integrality enforced degree by degree
    h = height(red, h_max)

    report = LandweberReport(p=p, ring=R, closed_fibre_height=h)
    if not h.is_finite:
        n_top = h.value
        chain = landweber_chain(ps, n_top)
        report.vs = chain.vs
        report.chain_generators = chain.generators
        report.verdicts = check_regular_sequence(
            R, [chain.vs[0]] + [chain.vs[n] for n in range(1, n_top + 1)])
        report.verdict = "inconclusive"
        report.reason = (
            f"closed-fibre height exceeds h_max = {h_max} within cap {cap} "
            f"(candidate supersingular; no unit v_n observed in the window)")
        return report

    n_stab = h.value
    chain = landweber_chain(ps, n_stab)
    report.vs = chain.vs
    report.chain_generators = chain.generators
    seq = [chain.vs[0]] + [chain.vs[n] for n in range(1, n_stab + 1)]
    verdicts = check_regular_sequence(R, seq)
    report.verdicts = verdicts
    bad = next((v for v in verdicts if v.status == "zerodivisor"), None)
    if bad is not None:
        report.verdict = "not_exact"
        report.reason = (f"{bad.element} is a zerodivisor "
                         f"(witness {bad.witness}): the sequence is not regular")
        return report
    if (verdicts and verdicts[-1].status == "unit"
            and all(v.status == "regular" for v in verdicts[:-1])):
        report.verdict = "exact"
        report.stabilization = n_stab
        seq = ", ".join(["p"] + [f"v_{i}" for i in range(1, n_stab)])
        report.reason = (f"({seq}) regular and v_{n_stab} a unit"
                         if n_stab > 1 else "p regular and v_1 a unit")
        return report
    unknown = next((v for v in verdicts if v.status == "unknown"), None)
    report.verdict = "inconclusive"
    report.reason = (unknown.reason if unknown is not None else
                     "verdict pattern does not match regular* unit: "
                     + ", ".join(v.status for v in verdicts))
    return report


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def _homotopy_shadow(pi0: str, line_note: str) -> dict:
    lines = [{"n": n, "degree": 2 * n, "rank": 1, "generator": f"u^{n}"}
             for n in range(-3, 4)]
    return {
        "even": True,
        "periodic": True,
        "pi0": pi0,
        "unit": "u invertible of degree 2",
        "lie": "the Lie algebra of the group law is dual to pi_2",
        "lines": lines,
        "line_note": line_note,
    }


@dataclass
class K3SpectrumCertificate:
    """The algebraic record of an even periodic ring attached to a quartic:
    base ring, surface, group law, the coordinate identification, the
    homotopy shadow R[u^{+-1}], and the exactness report that justifies it."""

    kind: str  # "p-local" | "rational"
    ring: RingPresentation | None
    surface: QuarticForm
    law: FormalGroupLaw
    iso: dict
    homotopy: dict
    report: LandweberReport | None

    def to_json_dict(self, timestamp: str | None = None) -> dict:
        ring_doc = (self.ring.to_json_dict() if self.ring is not None
                    else {"field": "Q", "description": "the rational numbers"})
        law_doc = {
            "vars": list(self.law.F.vars),
            "cap": self.law.cap,
            "provenance": self.law.provenance,
            "coefficients": [
                [e[0], e[1], str(self.law.F.coeffs[e])]
                for e in sorted(self.law.F.coeffs,
                                key=lambda e: (sum(e), e))
            ],
        }
        doc = {
            "schema": "formalbrauer.certificate/1",
            "kind": self.kind,
            "tool": {"name": "formalbrauer", "version": __version__},
        }
        if timestamp is not None:
            doc["generated_at"] = timestamp
        doc.update({
            "ring": ring_doc,
            "surface": {
                "name": self.surface.name,
                "terms": [list(e) + [self.surface.terms[e]]
                          for e in sorted(self.surface.terms, reverse=True)],
            },
            "law": law_doc,
            "iso": self.iso,
            "homotopy": self.homotopy,
            "report": (self.report.to_json_dict() if self.report is not None
                       else {"type": "rational-case",
                             "note": "no exactness check is needed over the "
                                     "rationals; the logarithm already "
                                     "trivializes the group law"}),
        })
        return doc


def certify_k3_spectrum(R: RingPresentation, f: QuarticForm, h_max: int,
                        cap: int | None = None,
                        law_cap: int = 10) -> K3SpectrumCertificate:
    """Certificate for the formal Brauer group of f over the p-local
    presentation R, refusing unless the exactness report comes back Exact.

    The embedded law is rebuilt at a small bivariate cap with p-integrality
    enforced and the full axiom suite run, so a certificate never carries an
    unchecked law."""
    p = R.prime
    if R.parameters:
        raise RingMismatch(
            "quartic laws have rational coefficients; use a parameter-free "
            "presentation")
    if cap is None:
        cap = p.p ** h_max + 1
    blog = stienstra_log(f, cap)
    law = fgl_from_log(blog.log, min(law_cap, cap), integral_at=p)
    law.verify_axioms()
    report = landweber_check(R, blog.log, h_max, cap)
    if report.verdict != "exact":
        raise CertificationRefused(
            f"cannot certify {f.name} over {R}: {report.reason}",
            report=report)
    iso = {
        "type": "coordinate-identification",
        "normalization": "identity on the logarithm coordinate",
        "note": "the group law is read in the coordinate singled out by the "
                "logarithm construction; recorded, not derived from geometry",
    }
    homotopy = _homotopy_shadow(
        pi0=R.describe(),
        line_note="free of rank 1 over pi_0 in every even degree")
    return K3SpectrumCertificate(
        kind="p-local", ring=R, surface=f, law=law, iso=iso,
        homotopy=homotopy, report=report)


def rational_certificate(f: QuarticForm, cap: int = 8) -> K3SpectrumCertificate:
    """Certificate over the rationals: smoothness is spot-checked at a small
    prime of good reduction, the law is additive (characteristic zero), and
    every even line has rank 1 because the canonical bundle of a smooth
    quartic surface is trivial."""
    checked = None
    for q in (3, 5, 7, 11, 13):
        if all(c % q == 0 for c in f.terms.values()):
            continue
        if smooth_check_fp(f, Prime(q)):
            checked = q
            break
    if checked is None:
        raise SmoothnessCheckFailed(
            f"{f.name}: no prime p <= 13 exhibits a smooth reduction; "
            f"refusing the rational certificate")
    law = standard_law("additive", QQ, cap)
    iso = {
        "type": "coordinate-identification",
        "normalization": "Serre duality",
        "note": "the identification on Lie algebras is the Serre-duality "
                "pairing; recorded, not verified geometry",
        "smoothness_spot_check_prime": checked,
    }
    homotopy = _homotopy_shadow(
        pi0="Q",
        line_note="sections of powers of the canonical bundle; rank 1 in "
                  "every even degree since the canonical bundle is trivial")
    return K3SpectrumCertificate(
        kind="rational", ring=None, surface=f, law=law, iso=iso,
        homotopy=homotopy, report=None)


# ---------------------------------------------------------------------------
# built-in scenarios (shared by the CLI and the acceptance suite)
# ---------------------------------------------------------------------------


def builtin_scenario(name: str, p=3, cap: int | None = None):
    """(presentation, law-or-logarithm, h_max) for the named scenario."""
    p = p if isinstance(p, Prime) else Prime(int(p))
    h_max = 2
    if cap is None:
        cap = p.p ** h_max + 1
    if name == "zp-multiplicative":
        R = zp_presentation(p)
        return R, standard_law("multiplicative", QQ, cap), h_max
    if name == "hazewinkel-t1":
        R = RingPresentation(p, ("t",), 12, (), name=f"Z_({p.p})[t]")
        base = R.base_ring
        log = hazewinkel_log([base.var("t"), base.one], p, cap)
        return R, log, h_max
    if name == "torsion":
        R = RingPresentation(p, (), 8, (p.p ** 2,),
                             name=f"Z_({p.p})/(p^2)")
        return R, standard_law("multiplicative", QQ, cap), h_max
    raise ValueError(
        f"unknown scenario {name!r}; built-ins: zp-multiplicative, "
        f"hazewinkel-t1, torsion")


SCENARIOS = ("zp-multiplicative", "hazewinkel-t1", "torsion")
