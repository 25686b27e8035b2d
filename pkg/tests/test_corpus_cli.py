import itertools
import json
import os

import pytest

from softsheaf import cli
from softsheaf.corpus import (
    are_isomorphic,
    canonical_key,
    generate_corpus,
    lattice_classes,
    poset_classes,
    poset_classes_by_extension,
)
from softsheaf.order import chain, named_lattice


def test_canonical_key_matches_bruteforce_iso():
    for n in range(1, 5):
        classes = poset_classes(n)
        for p1, p2 in itertools.combinations(classes, 2):
            assert not are_isomorphic(p1, p2)
            assert canonical_key(p1) != canonical_key(p2)
        for p in classes:
            assert are_isomorphic(p, p)


def test_two_poset_enumerators_agree():
    for n in range(1, 7):
        primary = {canonical_key(p) for p in poset_classes(n)}
        recount = {canonical_key(p) for p in poset_classes_by_extension(n)}
        assert primary == recount


# frozen after the two enumerators above agreed on every size
POSET_COUNTS = {1: 1, 2: 2, 3: 5, 4: 16, 5: 63, 6: 318}
LATTICE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15}


def test_frozen_counts():
    for n, expected in POSET_COUNTS.items():
        assert len(poset_classes(n)) == expected
    for n, expected in LATTICE_COUNTS.items():
        assert len(lattice_classes(n)) == expected


def test_generate_corpus_deterministic(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    m1 = generate_corpus(3, 4, 3, str(d1))
    m2 = generate_corpus(3, 4, 3, str(d2))
    assert m1.to_json() == m2.to_json()
    assert (d1 / "manifest.json").read_text() == (d2 / "manifest.json").read_text()
    for name in m1.files:
        assert (d1 / name).read_text() == (d2 / name).read_text()
    data = json.loads((d1 / "manifest.json").read_text())
    assert data["seed"] == 3 and data["lattice_counts"]["4"] == 2


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cli_verify_thm_gamma(capsys):
    code, out = run_cli(capsys, "verify", "thm-gamma", "--algebra", "set3", "--lattice", "bool4")
    assert code == 0 and "PASS" in out


def test_cli_verify_with_rep_file(capsys, tmp_path):
    rep = tmp_path / "one.rep"
    rep.write_text("rep\nlattice chain2\nalgebra set3\ntheta 0 0 0 0\ntheta 1 0 1 2\n")
    code, out = run_cli(
        capsys, "verify", "thm-gamma", "--algebra", "set3", "--lattice", "chain2", "--rep", str(rep)
    )
    assert code == 0 and "PASS" in out


def test_cli_check_lattice_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.lat"
    bad.write_text("lattice 2\n0<1\n1<0\n")
    code, out = run_cli(capsys, "check-lattice", str(bad))
    assert code == 1 and "FAIL" in out


def test_cli_gelfand_json(capsys):
    code, out = run_cli(capsys, "gelfand", "--ring", "zn:12", "--format", "json")
    assert code == 0
    payload = json.loads(out.strip())
    assert payload["pass"] and payload["instance"]["frame_size"] == 4


def test_cli_pierce(capsys):
    code, out = run_cli(capsys, "pierce", "--ring", "zn:6")
    assert code == 0 and "factors=[2, 3]" in out


def test_cli_compord_bijection(capsys):
    code, out = run_cli(capsys, "compord", "bijection", "--x", "chain2", "--y", "antichain2")
    assert code == 0 and "decompositions=2" in out


def test_cli_commute_triple_and_conlattice(capsys):
    code, out = run_cli(capsys, "verify", "commute-triple", "--algebra", "z2z2")
    assert code == 0
    code, out = run_cli(capsys, "con-lattice", "--algebra", "z4")
    assert code == 0 and "congruences=3" in out


def test_cli_wilker_and_hofmann_sweeps(capsys):
    code, out = run_cli(capsys, "verify", "wilker", "--max-size", "4")
    assert code == 0 and out.count("PASS") == 5
    code, out = run_cli(capsys, "verify", "hofmann-mislove", "--max-points", "3")
    assert code == 0 and out.count("PASS") == 8


def test_cli_dot_output(capsys):
    code, out = run_cli(capsys, "--format", "dot", "check-lattice", "n5")
    assert code == 0 and out.startswith("digraph")
    code, out = run_cli(capsys, "compord", "bijection", "--x", "chain2", "--y", "chain2", "--format", "dot")
    assert code == 0 and out.count("digraph") == 4


def test_cli_generate_corpus(capsys, tmp_path):
    out_dir = tmp_path / "corpus"
    code, out = run_cli(
        capsys, "generate-corpus", "--max-size", "3", "--max-points", "2", "--out-dir", str(out_dir)
    )
    assert code == 0
    assert (out_dir / "manifest.json").exists()
    # written lattice files parse back through the CLI
    code, out = run_cli(capsys, "check-lattice", str(out_dir / "lattice_3_0.lat"))
    assert code == 0


def test_cli_unknown_name_fails_cleanly(capsys):
    code, out = run_cli(capsys, "con-lattice", "--algebra", "nope")
    assert code == 1 and "FAIL" in out
