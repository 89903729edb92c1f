import json
import random
import shutil

import pytest
from helpers import (
    FIXTURES,
    circle_cover,
    circle_exponents,
    circle_morse,
    mapping_torus,
    matpow_trace,
    rand_int_matrix,
)

from torsion_lab.errors import ParseError
from torsion_lab.instance import (
    DEFAULT_PRECISION,
    InstanceBundle,
    default_precision,
    load_instance,
    parse_instance,
)
from torsion_lab.morse import MorseData
from torsion_lab.orbits import OrbitSet
from torsion_lab.verify import (
    CHECKS,
    FAIL,
    NOT_APPLICABLE,
    PARSE_ERROR,
    PASS,
    VerificationReport,
    exit_code,
    run_checks,
    run_suite,
    verify_leading_coefficient,
    verify_main,
    verify_refinement,
    verify_zeta_forms,
)


def outcomes(reports):
    return {r.check: r.outcome for r in reports}


def test_fixture_corpus_passes():
    reports = run_suite([FIXTURES])
    assert reports
    assert {r.outcome for r in reports} <= {PASS, NOT_APPLICABLE}
    assert all(r.missing_input for r in reports if r.outcome == NOT_APPLICABLE)
    assert exit_code(reports) == 0
    assert all(r.m == 0 for r in reports if r.check == "main" and r.outcome == PASS)


def test_empty_suite():
    assert run_suite([]) == []
    assert exit_code([]) == 0


def test_corrupted_file_is_reported_and_others_verified(tmp_path):
    shutil.copy(FIXTURES / "s1_k1.json", tmp_path / "a.json")
    (tmp_path / "b.json").write_text("{not json")
    reports = run_suite([tmp_path])
    parse = [r for r in reports if r.outcome == PARSE_ERROR]
    assert len(parse) == 1 and parse[0].file.endswith("b.json")
    assert any(r.file.endswith("a.json") and r.check == "main" and r.passed for r in reports)
    assert exit_code(reports) == 1


def test_negative_fixtures():
    corrupted = outcomes(run_checks(load_instance(FIXTURES / "negative" / "corrupted.json")))
    assert corrupted["refinement"] == FAIL and corrupted["main"] == FAIL
    nonacyclic = outcomes(run_checks(load_instance(FIXTURES / "negative" / "nonacyclic.json")))
    assert nonacyclic["main"] == NOT_APPLICABLE
    with pytest.raises(ParseError):
        load_instance(FIXTURES / "negative" / "bad_key.json")


def test_zero_branch_fixture():
    reports = run_checks(load_instance(FIXTURES / "zero_branch" / "zero_det.json"), ("meng-taubes", "zeta-forms"))
    assert all(r.passed for r in reports)


def test_exit_code_priorities():
    p = VerificationReport("main", PASS)
    f = VerificationReport("main", FAIL)
    e = VerificationReport("parse", PARSE_ERROR)
    n = VerificationReport("lemma", NOT_APPLICABLE)
    skipped = VerificationReport("lemma", NOT_APPLICABLE, missing_input=True)
    assert exit_code([p]) == 0
    assert exit_code([p, n]) == 2
    assert exit_code([p, n, e]) == 1
    assert exit_code([f, e, n]) == 3
    assert exit_code([p, skipped]) == 0
    assert exit_code([p, skipped], explicit=True) == 2


def test_reports_are_deterministic():
    a = [r.to_json() for r in run_suite([FIXTURES])]
    b = [r.to_json() for r in run_suite([FIXTURES])]
    assert a == b
    json.dumps(a)


def test_unknown_check_name():
    with pytest.raises(ValueError):
        run_checks(InstanceBundle(), ("nope",))


def test_circle_examples():
    b = load_instance(FIXTURES / "s1_k1.json")
    assert verify_refinement(b).passed
    main = verify_main(b)
    assert main.passed and main.m == 0
    b3 = load_instance(FIXTURES / "s1_k3_no_crit.json")
    assert verify_refinement(b3).passed and verify_main(b3).passed


def test_refinement_implies_main_on_random_circles():
    rng = random.Random(21)
    for _ in range(10):
        k, c = rng.randint(1, 4), rng.randint(1, 3)
        b = InstanceBundle(dimension=1, morse=circle_morse(*circle_exponents(rng, k, c)), orbits=OrbitSet(), cover=circle_cover(k))
        assert verify_refinement(b).passed
        r = verify_main(b, 20)
        assert r.passed and r.m == 0


def test_leading_coefficients_agree_on_fixtures():
    for name in ("s1_k1.json", "s1xs2.json", "trefoil0.json"):
        assert verify_leading_coefficient(load_instance(FIXTURES / name)).passed


def test_zeta_forms_on_a_bundle():
    assert verify_zeta_forms(load_instance(FIXTURES / "mixed.json"), 10).passed


def test_mapping_torus_lefschetz():
    rng = random.Random(2)
    f = [[[1]], rand_int_matrix(rng, 2), [[1]]]
    b = InstanceBundle(
        dimension=3,
        morse=MorseData.from_json({"dimension": 3, "critical": []}),
        cover=mapping_torus([[[0, 0]], [[0], [0]]], f),
        fix=lambda m: sum((-1) ** i * matpow_trace(a, m) for i, a in enumerate(f)),
    )
    r = verify_main(b, 15)
    assert r.passed and r.m == 0


# -- instance parsing -----------------------------------------------------------------


def test_instance_keys_are_strict():
    with pytest.raises(ParseError):
        parse_instance({"schema": 1, "orbit": []})
    with pytest.raises(ParseError):
        parse_instance({"orbits": []})
    with pytest.raises(ParseError):
        parse_instance({"schema": 1, "dimension": 2, "morse": {"dimension": 1, "critical": []}})
    with pytest.raises(ParseError):
        parse_instance({"schema": 1, "truncation": 0})


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_instance(tmp_path / "nope.json")


def test_precision_resolution(monkeypatch):
    monkeypatch.delenv("TORSION_LAB_PRECISION", raising=False)
    assert default_precision() == DEFAULT_PRECISION
    monkeypatch.setenv("TORSION_LAB_PRECISION", "7")
    assert InstanceBundle().precision() == 7
    assert InstanceBundle(truncation=12).precision() == 12
    assert InstanceBundle(truncation=12).precision(4) == 4
    monkeypatch.setenv("TORSION_LAB_PRECISION", "junk")
    assert default_precision() == DEFAULT_PRECISION


def test_all_checks_run_on_a_full_fixture():
    reports = run_checks(load_instance(FIXTURES / "s1xs2_sw.json"))
    assert [r.check for r in reports] == list(CHECKS)
    assert all(r.outcome in (PASS, NOT_APPLICABLE) for r in reports)
