"""Identity checks run against instance bundles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .complexes import is_acyclic, torsion
from .cover import cover_torsion, lefschetz_series, lemma_torsion
from .errors import NotAcyclicError, ParseError
from .exactalg import PM_TK, Q_TK, RationalFunction, normalize_unit_class, series_expand
from .instance import load_instance
from .matrices import determinant
from .morse import chain_homotopy_W
from .novikov import orbit_product, path_determinant, rho_specialize, sw_series
from .orbits import Orbit, OrbitSet, fix_counts, zeta_exp, zeta_product

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
PARSE_ERROR = "parse-error"

CHECKS = ("refinement", "main", "zeta-forms", "w-identity", "lemma", "meng-taubes", "leading-coefficient")


@dataclass
class VerificationReport:
    check: str
    outcome: str
    reason: str = ""
    witnesses: dict = field(default_factory=dict)
    m: int | None = None
    file: str | None = None
    missing_input: bool = False

    @property
    def passed(self):
        return self.outcome == PASS

    def to_json(self):
        out = {"file": self.file, "check": self.check, "outcome": self.outcome, "witnesses": self.witnesses, "m": self.m}
        if self.reason:
            out["reason"] = self.reason
        return out


def _missing(check, what):
    return VerificationReport(check, NOT_APPLICABLE, f"instance has no {what}", missing_input=True)


def _morse_state(b, check):
    """Torsion of the Morse complex, or a report explaining why it is unavailable."""
    if b.morse is None:
        return None, _missing(check, "morse block")
    mc = b.morse_complex()
    if not mc.is_acyclic:
        return None, VerificationReport(check, NOT_APPLICABLE, "Morse complex is not acyclic over Q(t)")
    return torsion(mc.complex, ambiguity=PM_TK), None


def verify_refinement(b):
    """Exact unit-class comparison of ``zeta^((-1)^(n-1)) * tau(M)`` with the cover torsion."""
    check = "refinement"
    state, bad = _morse_state(b, check)
    if bad:
        return bad
    if not b.has_orbit_data:
        return _missing(check, "orbit data")
    if b.cover is None:
        return _missing(check, "cover block")
    tau_m, _ = state
    n = b.n
    zeta = b.zeta_rational()
    lhs = normalize_unit_class(zeta ** (1 if (n - 1) % 2 == 0 else -1) * tau_m.to_rational(), PM_TK)
    wit = {"lhs": lhs.to_json()}
    try:
        rhs = cover_torsion(b.cover)
    except NotAcyclicError:
        wit["rhs"] = "not acyclic"
        return VerificationReport(check, FAIL, "Morse complex is acyclic but the cover complex is not", wit)
    wit["rhs"] = rhs.to_json()
    if lhs == rhs:
        return VerificationReport(check, PASS, witnesses=wit)
    return VerificationReport(check, FAIL, "unit classes differ", wit)


def verify_main(b, N=None):
    """Truncated check that ``sum Fix t^k - (-1)^n t (log tau(M))'`` minus the Lefschetz series is constant."""
    check = "main"
    N = b.precision(N)
    if N < 2:
        raise ValueError("verify_main needs precision N >= 2")
    state, bad = _morse_state(b, check)
    if bad:
        return bad
    if b.orbits is None and b.fix is None:
        return _missing(check, "orbit data")
    if b.cover is None and b.summary is None:
        return _missing(check, "cover block")
    tau_m, _ = state
    n = b.n
    fix = b.fix_counts(N - 1).series()
    logd = series_expand(tau_m.to_rational().log_derivative(), N)
    lhs = fix - logd if n % 2 == 0 else fix + logd
    h = b.homology_summary()
    if not h.finite:
        return VerificationReport(check, FAIL, "cover homology is not finite dimensional", {"lhs": lhs.to_json(), "rhs": "infinite"})
    rhs = lefschetz_series(h, N)
    diff = lhs - rhs
    wit = {"lhs": lhs.to_json(), "rhs": rhs.to_json(), "precision": diff.precision}
    stray = [e for e, _ in diff.terms() if e != 0]
    if stray:
        return VerificationReport(check, FAIL, f"difference has non-constant terms at exponents {stray[:5]}", wit)
    m = diff.coefficient(0)
    if Fraction(m).denominator != 1:
        return VerificationReport(check, FAIL, f"constant difference {m} is not an integer", wit)
    return VerificationReport(check, PASS, witnesses=wit, m=int(m))


def verify_zeta_forms(b, N=None):
    check = "zeta-forms"
    if b.orbits is None:
        return _missing(check, "orbits block")
    N = b.precision(N)
    prod = zeta_product(b.orbits, N)
    expf = zeta_exp(fix_counts(b.orbits, N)).truncate(N)
    rat = series_expand(b.zeta_rational(), N)
    wit = {"product": prod.to_json(), "exp": expf.to_json(), "rational": rat.to_json()}
    if prod == expf == rat and prod.coefficient(0) == 1:
        return VerificationReport(check, PASS, witnesses=wit)
    return VerificationReport(check, FAIL, "zeta forms disagree", wit)


def verify_w_identity(b):
    check = "w-identity"
    if b.morse is None:
        return _missing(check, "morse block")
    mc = b.morse_complex()
    if not mc.is_acyclic:
        return VerificationReport(check, NOT_APPLICABLE, "Morse complex is not acyclic over Q(t)")
    try:
        W = chain_homotopy_W(mc)
    except ArithmeticError as exc:
        return VerificationReport(check, FAIL, str(exc), {"W": "identity failed", "t": "expected"})
    return VerificationReport(check, PASS, witnesses={"degrees": len(W)})


def verify_lemma_torsion(b):
    """Torsion from subsets versus the alternating product of homology orders."""
    check = "lemma"
    targets = [(k, c) for k, c in (("cover", b.cover), ("complex", b.complex)) if c is not None]
    if not targets:
        return _missing(check, "cover or complex block")
    wit = {}
    ok = True
    for key, c in targets:
        if not is_acyclic(c):
            wit[key] = "not acyclic"
            continue
        a = torsion(c, ambiguity=Q_TK)[0]
        o = lemma_torsion(c)
        wit[key] = {"torsion": a.to_json(), "orders": o.to_json()}
        ok = ok and a == o
    if all(v == "not acyclic" for v in wit.values()):
        return VerificationReport(check, NOT_APPLICABLE, "no acyclic complex to compare", wit)
    return VerificationReport(check, PASS if ok else FAIL, "" if ok else "torsion and homology orders differ", wit)


def verify_leading_coefficient(b):
    """Leading coefficients of tau(M) and the cover torsion agree up to sign."""
    check = "leading-coefficient"
    state, bad = _morse_state(b, check)
    if bad:
        return bad
    if b.cover is None:
        return _missing(check, "cover block")
    if not is_acyclic(b.cover):
        return VerificationReport(check, NOT_APPLICABLE, "cover complex is not acyclic")
    lm = state[1].value.leading_coefficient()
    lx = torsion(b.cover)[1].value.leading_coefficient()
    wit = {"morse": str(lm), "cover": str(lx)}
    if abs(Fraction(lm)) == abs(Fraction(lx)):
        return VerificationReport(check, PASS, witnesses=wit)
    return VerificationReport(check, FAIL, "leading coefficients differ", wit)


def series_matches_unit_class(s, u):
    """Whether the truncated series s equals ``±t^k`` times the expansion of u, for some k."""
    if s.is_zero:
        return False
    f = u.to_rational()
    k = s.lower - f.valuation
    expansion = series_expand(f, s.precision - k).shift(k)
    lead = s.coefficient(s.lower)
    if lead == f.leading_coefficient():
        return expansion == s
    if lead == -f.leading_coefficient():
        return (-expansion) == s
    return False


def verify_meng_taubes(b, N=None):
    """Consistency of the Novikov block with the Morse, orbit and cover data."""
    check = "meng-taubes"
    nb = b.novikov
    if nb is None:
        return _missing(check, "novikov block")
    N = nb.precision if N is None else N
    wit = {}
    ok = True
    det_p = path_determinant(nb.path_matrix, N)
    rho_det = rho_specialize(det_p)
    wit["rho_det_P"] = rho_det.to_json()
    if b.morse is not None and b.morse.dimension >= 2:
        d1 = b.morse.differential(1)
        if d1.is_square:
            dm = determinant(d1)
            wit["det_d1"] = dm.to_json()
            same = series_expand(RationalFunction(dm), rho_det.precision) == rho_det
            wit["det_match"] = same
            ok = ok and same
    zp = orbit_product(nb.orbits, nb.weights, N)
    rho_z = rho_specialize(zp)
    projected = OrbitSet(tuple(Orbit(sum(x * w for x, w in zip(o.homology_class, nb.weights)), o.sign) for o in nb.orbits))
    zs = zeta_product(projected, rho_z.precision)
    wit["zeta_match"] = zs == rho_z
    ok = ok and wit["zeta_match"]
    if b.orbits is not None:
        same = series_expand(b.zeta_rational(), rho_z.precision) == rho_z
        wit["instance_zeta_match"] = same
        ok = ok and same
    sw = sw_series(nb.i_eta(N), nb.chi_sigma)
    wit["sw"] = sw.to_json()
    if b.cover is not None:
        if is_acyclic(b.cover):
            tau = cover_torsion(b.cover)
            wit["cover_torsion"] = tau.to_json()
            same = series_matches_unit_class(sw, tau)
        else:
            wit["cover_torsion"] = "not acyclic"
            same = sw.is_zero
        wit["sw_match"] = same
        ok = ok and same
    return VerificationReport(check, PASS if ok else FAIL, "" if ok else "Novikov data inconsistent", wit)


def run_checks(b, checks=CHECKS, N=None):
    out = []
    for name in checks:
        if name == "refinement":
            r = verify_refinement(b)
        elif name == "main":
            r = verify_main(b, N)
        elif name == "zeta-forms":
            r = verify_zeta_forms(b, N)
        elif name == "w-identity":
            r = verify_w_identity(b)
        elif name == "lemma":
            r = verify_lemma_torsion(b)
        elif name == "meng-taubes":
            r = verify_meng_taubes(b)
        elif name == "leading-coefficient":
            r = verify_leading_coefficient(b)
        else:
            raise ValueError(f"unknown check {name!r}")
        r.file = b.source or b.name
        out.append(r)
    return out


def expand_paths(paths):
    files = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir() if q.suffix == ".json"))
        else:
            files.append(p)
    return files


def run_suite(paths, checks=CHECKS, N=None):
    """Verify every instance file; parse errors become per-file reports."""
    reports = []
    for path in expand_paths(paths):
        try:
            b = load_instance(path)
        except ParseError as exc:
            reports.append(VerificationReport("parse", PARSE_ERROR, str(exc), file=str(path)))
            continue
        reports.extend(run_checks(b, checks, N))
    return reports


def exit_code(reports, explicit=False):
    """0 all pass, 3 any failure, 1 any parse error, 2 anything not applicable.

    Checks skipped only because an optional block is absent do not count
    unless they were requested explicitly.
    """
    outcomes = [r.outcome for r in reports if explicit or not (r.outcome == NOT_APPLICABLE and r.missing_input)]
    if FAIL in outcomes:
        return 3
    if PARSE_ERROR in outcomes:
        return 1
    if NOT_APPLICABLE in outcomes:
        return 2
    return 0
