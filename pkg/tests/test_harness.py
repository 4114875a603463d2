from __future__ import annotations

import json
from itertools import product

import numpy as np
import pytest

from hermsinger.errors import UnknownClaim
from hermsinger.gftower import small_field
from hermsinger.harness.census import conic_census, conic_discriminant, conic_vanishes, monomial_values
from hermsinger.harness.cli import main
from hermsinger.harness.reference import (
    CONIC_EXPONENTS,
    CONIC_POINTS,
    ORBIT_EXPONENTS,
    from_exponents,
    reproduce_reference,
)
from hermsinger.harness.verify import PASS, SKIP, claims_for, overall_status, verify


@pytest.fixture(scope="module")
def reference():
    return reproduce_reference(all_conventions=True)


def test_discriminant_detects_degenerate_conics():
    F = small_field(4)
    # X1 * X2 is a line pair; X1^2 + X2 X0 is smooth
    assert conic_discriminant(F, (0, 1, 0, 0, 0, 0)) == 0
    assert conic_discriminant(F, (1, 0, 0, 0, 1, 0)) != 0


def test_census_on_a_plain_conic():
    # nine points of X1^2 = X2 X0 over F_9: every 5 of them determine that one conic
    F = small_field(3)
    pts = [(0, 0, 1), (0, 1, 0)] + [(x, F.mul(x, x), 1) for x in range(1, 8)]
    c = conic_census(F, np.array(pts), threshold=9)
    assert c.count == 1 and c.max_incidence == 9 and c.distinct_conics == 1
    assert c.conics[0]["irreducible"]


def test_census_matches_exhaustive_conic_scan(reference):
    # oracle: every conic over F_16, scaled so its first nonzero coefficient is 1
    F = small_field(4)
    omega = reference.census.omega
    V = monomial_values(F, omega, 2)
    best, count = 0, 0
    for lead in range(6):
        free = 5 - lead
        tails = np.array(list(product(range(16), repeat=free)), dtype=np.int64).reshape(16**free, free)
        coeffs = np.zeros((len(tails), 6), dtype=np.int64)
        coeffs[:, lead] = 1
        coeffs[:, lead + 1 :] = tails
        vals = np.zeros((len(coeffs), len(omega)), dtype=np.int64)
        for j in range(6):
            vals = F.add_table[vals, F.mul_table[coeffs[:, j][:, None], V[None, :, j]]]
        on = (vals == 0).sum(axis=1)
        top = int(on.max())
        if top > best:
            best, count = top, 0
        if top == best:
            count += int((on == top).sum())
    assert (count, best) == (reference.census.count, reference.census.max_incidence)


def test_census_statistics(reference):
    c = reference.census
    assert c.unique_through_five
    assert c.max_incidence == 7
    assert all(e["irreducible"] for e in c.conics)
    assert all(len(e["points"]) == 7 for e in c.conics)
    F = small_field(4)
    for e in c.conics:
        on = np.flatnonzero(conic_vanishes(F, e["coeffs"], c.omega)).tolist()
        assert on == e["points"]


def test_displayed_conic(reference):
    assert reference.conic_check["points_on_conic"] == list(CONIC_POINTS)
    assert reference.conic_check["in_census"]


def test_literal_reproduction(reference):
    assert reference.level == "literal" and reference.status == "PASS"
    F = small_field(4)
    m = reference.literal_matches[0]
    listed = from_exponents(F, ORBIT_EXPONENTS, F.element(m["r_exponent"]))
    assert len(listed) == 13
    # every listed point lies on the Fermat unital X1^5 + X2^5 + X0^5
    vals = [F.add(F.add(F.pow(int(a), 5), F.pow(int(b), 5)), F.pow(int(c), 5)) for a, b, c in listed]
    assert not any(vals)
    assert len(CONIC_EXPONENTS) == 6


def test_census_is_convention_independent(reference):
    assert len(set(reference.census_stats)) == 1


def test_census_splits_into_singer_orbits(reference):
    orbits = reference.extra["conic_orbits_under_singer_group"]
    assert sum(orbits) == reference.census.count
    assert all(size == 13 for size in orbits)


def test_verify_reports_and_unknown_claim():
    reps = verify("Thm4.1", 3)
    assert len(reps) == 1 and reps[0].status == PASS
    assert reps[0].computed["d"] == 14
    assert json.loads(json.dumps(reps[0].to_json()))["claim"] == "Thm4.1"
    with pytest.raises(UnknownClaim):
        verify("Thm9.9", 3)
    assert verify("census", 3)[0].status == SKIP


def test_verify_aliases():
    assert verify("Cor3.7", 3)[0].claim == "Prop3.6"
    rep = verify("Thm5.1+6.1", 3)[0]
    assert rep.status == PASS and rep.computed["d"] == 5


def test_verify_is_deterministic():
    a = [r.computed for r in verify("Thm5.1", 3)]
    b = [r.computed for r in verify("Thm5.1", 3)]
    assert a == b


def test_all_claims_q3():
    reps = verify("all", 3)
    assert {r.claim for r in reps} == set(claims_for(3))
    assert overall_status(reps) == PASS


def test_cli_verify_all(capsys):
    assert main(["verify", "--q", "3", "--claim", "all"]) == 0
    assert "overall: PASS" in capsys.readouterr().out


def test_cli_build_code_json(tmp_path):
    out = tmp_path / "code.json"
    assert main(["build-code", "--q", "4", "--lambda", "1", "--format", "json", "--out", str(out)]) == 0
    js = json.loads(out.read_text())
    assert (len(js["generator"]), len(js["generator"][0])) == (8, 52)


def test_cli_min_dist_formats(capsys):
    assert main(["min-dist", "--q", "3", "--kind", "subcode", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["lower"] == 17
    assert main(["min-dist", "--q", "3", "--kind", "differential", "--method", "columns", "--w", "4", "--format", "csv"]) == 0
    assert capsys.readouterr().out.strip().splitlines()[1].split(",")[5] == "5"


def test_cli_usage_errors(capsys):
    assert main([]) == 2
    assert main(["verify", "--q", "7"]) == 2
    assert main(["verify", "--q", "3", "--claim", "nonsense"]) == 2
    assert main(["build-code", "--q", "3", "--lambda", "3"]) == 2
    assert main(["conics", "--q", "3"]) == 2
    assert main(["build-code", "--q", "3", "--format", "xml"]) == 2


def test_cli_fail_exit_code():
    # the reference census count is not reproduced, so this claim reports FAIL
    assert main(["verify", "--q", "4", "--claim", "census"]) == 1


def test_cli_conics_and_reproduce(capsys):
    assert main(["conics", "--q", "4", "--format", "json"]) == 0
    js = json.loads(capsys.readouterr().out)
    assert js["max_incidence"] == 7
    assert main(["reproduce-paper", "--q", "4"]) == 0
    assert "literal" in capsys.readouterr().out


def test_cli_geometry(capsys):
    assert main(["geometry", "--q", "3", "--format", "csv"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[0].startswith("claim,") and all(r.endswith(tuple("0123456789")) for r in rows[1:])
