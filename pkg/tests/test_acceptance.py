"""The fourteen acceptance criteria, each at its stated tolerance and time limit."""

import pytest

from twofill import verify

# (criterion, check id, seconds allowed)
CRITERIA = [
    (1, "switch-conditions", 1),
    (2, "induced-weights", 1),
    (3, "boundary-census", 30),
    (4, "saddle-census", 10),
    (5, "singular-orbits", 1),
    (6, "dyadic-leaves", 5),
    (7, "iet", 10),
    (8, "equidistribution", 60),
    (9, "substitution", 5),
    (10, "order-lemmas", 30),
    (11, "missing-path", 1),
    (12, "piece-paths", 1),
    (13, "unzip", 10),
    (14, "filling", 60),
]

LINES = []


@pytest.mark.parametrize("num,cid,limit", CRITERIA, ids=[f"criterion-{n:02d}-{c}" for n, c, _ in CRITERIA])
def test_criterion(num, cid, limit):
    res = verify.runCheck(cid)
    ok = res.status == verify.VERIFIED and res.timing < limit
    line = f"criterion {num:2d} {cid:18} {'PASS' if ok else 'FAIL'}  {res.status}  {res.timing:.2f}s (< {limit}s)"
    LINES.append(line)
    print(line)
    assert res.status == verify.VERIFIED, res.details
    assert res.timing < limit
