from __future__ import annotations

from cyclo.tools.sweep import main, scan


def test_scan_finds_the_example_tuples():
    found = {P.as_tuple() for P in scan(11, 5)}
    assert (11, 5, 1, 1, 3) in found
    assert (7, 5, 1, 1, 2) in found
    assert (7, 5, 1, 1, 3) not in found
    assert all(P.p % 4 == 3 for P in scan(11, 5))


def test_scan_respects_length_cap():
    assert all(P.n <= 40 for P in scan(11, 5, n_max=40))
    assert (7, 5, 2, 1, 2) in {P.as_tuple() for P in scan(7, 5, s_max=2)}


def test_sweep_cli(capsys):
    assert main(["--p-max", "7", "--q-max", "5"]) == 0
    out = capsys.readouterr().out
    assert "(7, 5, 1, 1, 2)  n=35  m=12" in out
    assert "valid tuple(s)" in out
