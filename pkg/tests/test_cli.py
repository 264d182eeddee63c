import pathlib

from arithcs import dataio
from arithcs.cli import main
from arithcs.fixtures import one_place_fiber_datum
from arithcs.groups import cyclic, make_hom

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cohomology_subcommand(capsys):
    code, out, _ = run(
        capsys, "cohomology", "--group", FIX / "z2_group.json", "--modulus", 2, "--degree", 3
    )
    assert code == 0
    assert "invariant_factors: [2]" in out


def test_invariant_deterministic(capsys):
    args = ("invariant", "--datum", FIX / "quaternion_datum.json", "--rho", FIX / "quaternion_rho_i.json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "cs_invariant: 1/2" in out1


def test_section_subcommand(capsys):
    code, out, _ = run(
        capsys, "section", "--datum", FIX / "toy_datum.json", "--rho", FIX / "toy_rho.json"
    )
    assert code == 0
    assert "class_at_unramified_basepoint: 0/2" in out


def test_validate_pass_and_fail(capsys):
    code, out, _ = run(capsys, "validate", "--datum", FIX / "balanced_reciprocity.json")
    assert code == 0 and "result: valid" in out
    code, out, _ = run(capsys, "validate", "--datum", FIX / "broken_reciprocity.json")
    assert code == 2 and "result: INVALID" in out
    assert "reciprocity" in out


def test_classify_and_bockstein_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "classify", "--cochain", FIX / "carry_mod3.json")
    assert code == 0
    assert "nontrivial_class" in out
    code, out, _ = run(capsys, "bockstein", "--cochain", FIX / "carry_mod3.json")
    # carry is a 2-cocycle mod 3; its bockstein is a 3-cochain document
    assert code == 0
    doc = dataio.parse(out)
    assert doc.resolve_main().degree == 3


def test_cup_conjugate_homotopy(capsys, tmp_path):
    alpha_path = tmp_path / "alpha.json"
    from arithcs.ops import identity_character

    dataio.dump_path(dataio.document_for(identity_character(3)), alpha_path)
    code, out, _ = run(capsys, "cup", "--left", alpha_path, "--right", FIX / "carry_mod3.json")
    assert code == 0
    cup_doc = tmp_path / "cup.json"
    cup_doc.write_text(out)
    code, out, _ = run(capsys, "classify", "--cochain", cup_doc)
    assert code == 0 and "nontrivial_class" in out

    code, out, _ = run(capsys, "conjugate", "--cochain", FIX / "carry_mod3.json", "--element", 1)
    assert code == 0  # abelian group: unchanged
    assert dataio.parse(out).resolve_main() == dataio.load_path(FIX / "carry_mod3.json").resolve_main()

    code, out, _ = run(capsys, "homotopy", "--cochain", FIX / "carry_mod3.json", "--elements", "1")
    assert code == 0
    assert dataio.parse(out).resolve_main().degree == 1


def test_kummer_subcommand_and_no_lift(capsys, tmp_path):
    code, out, _ = run(capsys, "kummer", "--hom", FIX / "z4_to_z2.json")
    assert code == 0 and out.startswith("b:")
    ident = tmp_path / "ident.json"
    dataio.dump_path(dataio.document_for(make_hom(cyclic(2), cyclic(2), [0, 1])), ident)
    code, out, err = run(capsys, "kummer", "--hom", ident)
    assert code == 3
    assert "NoLift" in err


def test_invariant_computation_error_exit_code(capsys, tmp_path):
    fiber = tmp_path / "fiber.json"
    rho = tmp_path / "rho.json"
    dataio.dump_path(dataio.document_for(one_place_fiber_datum()), fiber)
    dataio.dump_path(dataio.document_for(make_hom(cyclic(2), cyclic(2), [0, 1])), rho)
    code, out, err = run(capsys, "invariant", "--datum", fiber, "--rho", rho)
    assert code == 3
    assert "NoGlobalTrivialization" in err


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = run(capsys, "validate", "--datum", bad)
    assert code == 4
    assert "ParseError" in err


def test_validation_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(
        '{"format_version": 1, "objects": {"g": {"type": "group", "order": 2, "mul": [0, 1, 0, 1]}}}'
    )
    code, out, err = run(capsys, "cohomology", "--group", bad, "--modulus", 2, "--degree", 1)
    assert code == 2


def test_verify_subcommand_quick(capsys):
    # full battery runs in the acceptance suite; here just check wiring
    code, out, _ = run(capsys, "verify", "--seed", 42)
    assert code == 0
    assert "verification passed" in out
