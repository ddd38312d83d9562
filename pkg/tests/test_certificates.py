"""Certificate corpus: every identity and sign certificate, exact links,
numeric guards, and failure localisation."""

from fractions import Fraction as F

import pytest

from curlsharp import certificates as certs
from curlsharp import polyfamily as pf
from curlsharp.constants import Params, alpha
from curlsharp.poly import parse_poly


def test_full_suite_passes():
    suite = certs.run_suite()
    bad = [r for r in suite.reports + suite.structural if not r.ok]
    assert not bad, [f"{r.name}: {r.detail}" for r in bad]
    passed, total = suite.counts
    assert passed == total >= 70


def test_suite_is_deterministic():
    a = [(r.name, r.ok) for r in certs.run_suite().reports]
    b = [(r.name, r.ok) for r in certs.run_suite().reports]
    assert a == b


def test_every_corpus_file_has_reference():
    names = {c.name for c in certs.load_corpus()}
    missing = names - set(certs.REFERENCES)
    assert not missing
    unused = set(certs.REFERENCES) - names
    assert not unused


@pytest.mark.parametrize("op,count", [
    (certs.verify_p1_positivity, 4),
    (certs.certify_regime_le1, 18),
    (certs.certify_regime_gt1_nge3, 23),
    (certs.certify_regime_n2, 11),
    (certs.verify_section5_identities, 9),
])
def test_grouped_operations(op, count):
    reports = op()
    assert len(reports) == count
    assert all(r.ok for r in reports), [r.name for r in reports if not r.ok]


def test_qp1_identity_symbolic_and_spot():
    assert certs.verify_qp1_identity().ok
    # numeric spot check at (tau, a, lam, N) = (1, 2, 1/2, 3)
    point = {"tau": F(1), "a": F(2), "lam": F(1, 2), "N": F(3)}
    p1 = pf.p1()
    q1 = pf.q1()
    p1z, q1z = p1.subs("tau", 0), q1.subs("tau", 0)
    lhs = (q1 * p1z - q1z * p1 - pf.TAU * p1 * p1z).eval(point)
    rhs = (pf.TAU * (2 * pf.LAM + pf.N - 2)
           * (pf.g0() + pf.g1() * pf.TAU)).eval(point)
    assert lhs == rhs
    # tau = 0 slice: both sides vanish
    zero = {"tau": F(0), "a": F(5), "lam": F(2), "N": F(4)}
    assert (q1 * p1z - q1z * p1 - pf.TAU * p1 * p1z).eval(zero) == 0


def test_q0p0_identity_numeric():
    assert certs.verify_q0p0().ok
    # (tau, lam, N) = (2, 1, 3): LHS = 36 = (3-1)(2+1)^2 * 2
    point = {"tau": F(2), "lam": F(1), "N": F(3)}
    p0, q0 = pf.p0(), pf.q0()
    lhs = (q0 * p0.subs("tau", 0) - q0.subs("tau", 0) * p0
           - pf.TAU * p0 * p0.subs("tau", 0)).eval(point)
    assert lhs == 36
    # factor 2 lam + N - 2 vanishes at lam = 1 - N/2
    point = {"tau": F(3), "lam": F(1) - F(5, 2), "N": F(5)}
    lhs = (q0 * p0.subs("tau", 0) - q0.subs("tau", 0) * p0
           - pf.TAU * p0 * p0.subs("tau", 0)).eval(point)
    assert lhs == 0


def test_p1_displays():
    p1z = pf.p1().subs("tau", 0)
    assert p1z.subs("a", pf.N - 1) == parse_poly("lam^2*((lam+1)^2 + 3*(N-1))")
    assert p1z.subs("a", pf.N - 1).subs("lam", 0).is_zero()
    alpha2_val = p1z.subs("a", 2 * pf.N)
    decomp = parse_poly(
        "lam^2*(lam+1)^2 + 2*(2*N-1)*lam^2 + (N+1)*(lam-1)^2 + 2*(N^2-1)")
    assert alpha2_val == decomp
    # Q0(0) factorised display
    assert pf.q0().subs("tau", 0) == parse_poly("(lam-1)^2 * (lam+N-1)^2")


def test_w_interleaving_numeric():
    # C(nu) - A(nu-1) against the W form at (N, gamma, nu) = (3, 0, 2)
    p = Params(3, F(0))
    lam = p.lam
    nu = 2
    anu = alpha(nu, 3)
    q1z = pf.q1().subs("tau", 0)
    p1z = pf.p1().subs("tau", 0)
    point = {"a": anu, "lam": lam, "N": F(3)}
    c_nu = q1z.eval(point) / p1z.eval(point)
    a_prev = (alpha(nu - 1, 3) - alpha(lam, 3)) ** 2 / (alpha(nu - 1, 3) + lam ** 2)
    w_val = pf.w_interleave().eval(point)
    rhs = -2 * (nu - lam - 1) ** 2 * w_val * (nu + 3 - 2) \
        / ((alpha(nu - 1, 3) + lam ** 2) * p1z.eval(point))
    assert c_nu - a_prev == rhs


def test_quotient_constant_links_exact():
    assert certs.quotient_constant_links(n_max=10, nu_max=8) == []


def test_interleaving_spot_checks():
    assert certs.interleaving_spot_checks(seed=0, count=200) == []


def test_difference_quotient_guard():
    margin, checked, failures = certs.difference_quotient_guard(
        seed=0, count=10_000)
    assert checked >= 10_000
    assert not failures
    assert margin >= -1e-12


def test_difference_quotient_infimum_near_one():
    # for gamma <= 1 the channel constant 1 is sharp: the infimum over a
    # dense large-tau grid sits just above 1
    for (n, g, nu) in [(3, F(0), 1), (2, F(0), 1), (4, F(1), 2)]:
        inf = certs.difference_quotient_infimum(Params(n, g), nu)
        assert 1 - 1e-12 <= inf <= 1 + 1e-2, (n, g, nu, inf)


def test_c0_for():
    assert certs.c0_for(Params(3, F(0))) == 1
    assert certs.c0_for(Params(3, F(2))) == F(1, 2)
    assert certs.c0_for(Params(2, F(2))) == F(1, 3)


def test_checker_catches_broken_identity():
    cert = certs.parse_certificate(
        "name: wrong\nregime: base\ntarget: lam^2 + 1\n")
    report = certs.check_certificate(cert, parse_poly("lam^2"))
    assert not report.identity_ok and "difference" in report.detail


def test_checker_catches_broken_signs():
    text = """
name: wrong-signs
regime: base
assume s
target: s - 1
term: dom(s)
term: -1
"""
    cert = certs.parse_certificate(text)
    report = certs.check_certificate(cert, parse_poly("s - 1"))
    assert report.identity_ok and not report.signs_ok


def test_checker_rejects_unassumed_domain_factor():
    text = """
name: bad-dom
regime: base
target: s
term: dom(s)
"""
    with pytest.raises(certs.CertificateError):
        certs.parse_certificate(text)


def test_shifted_coeffs_rule():
    # even powers of an unbounded variable are fine; odd ones are not
    ok = certs._shifted_coeffs_nonneg(parse_poly("lam^2 + N - 2"), {"N": F(2)})
    assert ok
    bad = certs._shifted_coeffs_nonneg(parse_poly("lam + N"), {"N": F(2)})
    assert not bad


def test_textual_corpus_roundtrip():
    # the canonical writer output re-parses to the same polynomial for
    # every target in the corpus
    from curlsharp.poly import format_poly
    for cert in certs.load_corpus():
        assert parse_poly(format_poly(cert.target)) == cert.target
