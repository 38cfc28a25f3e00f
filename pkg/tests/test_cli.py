"""Document round-trips, strict parsing, CLI subcommands and exit codes."""

import json

import pytest

from ainfinity.cli import main
from ainfinity.docio import Document, DocumentError, dump, load, parse, serialize
from ainfinity.fields import PrimeField
from ainfinity.graded import MultiMap
from ainfinity.retracts import instance_forms, instance_massey


def massey_doc(tmp_path, name="massey.json"):
    mu = instance_massey()
    doc = Document(mu.carrier.field, 5, {"V": mu.carrier}, structure=("V", mu))
    path = tmp_path / name
    dump(doc, str(path))
    return str(path)


def forms_doc(tmp_path, name="forms.json", mutate=None):
    mu = instance_forms()
    if mutate:
        mu = mutate(mu)
    doc = Document(mu.carrier.field, 5, {"V": mu.carrier}, structure=("V", mu))
    path = tmp_path / name
    dump(doc, str(path))
    return str(path)


# ------------------------------------------------------------ round trips

def test_parse_serialize_roundtrip(tmp_path):
    path = massey_doc(tmp_path)
    text = open(path).read()
    doc = parse(text)
    again = serialize(doc)
    assert again == text
    assert parse(again) == doc


def test_mod_p_roundtrip():
    mu = instance_massey(field=PrimeField(7))
    doc = Document(mu.carrier.field, 5, {"V": mu.carrier}, structure=("V", mu))
    text = serialize(doc)
    doc2 = parse(text)
    assert doc2 == doc
    assert serialize(doc2) == text


def test_transfer_output_roundtrips(tmp_path):
    src = massey_doc(tmp_path)
    out = str(tmp_path / "out.json")
    assert main(["transfer", src, "--method", "kernels", "--retract", "auto",
                 "-o", out]) == 0
    text = open(out).read()
    doc = parse(text)
    assert serialize(doc) == text
    assert doc.transfer is not None and doc.retract is not None


# ---------------------------------------------------------- strict parsing

def test_unknown_fields_rejected(tmp_path):
    path = massey_doc(tmp_path)
    obj = json.loads(open(path).read())
    obj["surprise"] = 1
    with pytest.raises(DocumentError):
        parse(json.dumps(obj))


def test_format_version_mandatory(tmp_path):
    path = massey_doc(tmp_path)
    obj = json.loads(open(path).read())
    del obj["format"]
    with pytest.raises(DocumentError):
        parse(json.dumps(obj))
    obj["format"] = "ainfty-doc/999"
    with pytest.raises(DocumentError):
        parse(json.dumps(obj))


def test_bad_scalar_and_bad_reference_rejected(tmp_path):
    path = massey_doc(tmp_path)
    obj = json.loads(open(path).read())
    entry = obj["structure"]["differential"][0]
    good_output = entry["output"][0]
    entry["output"][0] = [good_output[0], "1/0"]
    with pytest.raises(DocumentError):
        parse(json.dumps(obj))
    entry["output"][0] = [[99, 0], "1"]
    with pytest.raises(DocumentError):
        parse(json.dumps(obj))


def test_inhomogeneous_entry_rejected(tmp_path):
    path = massey_doc(tmp_path)
    obj = json.loads(open(path).read())
    entry = obj["structure"]["differential"][0]
    entry["output"][0] = [[4, 0], "1"]  # degree 3 input cannot go to degree 4
    with pytest.raises(DocumentError):
        parse(json.dumps(obj))


# ------------------------------------------------------------------- check

def test_check_passes_on_shipped_instances(tmp_path, capsys):
    for path in (massey_doc(tmp_path), forms_doc(tmp_path)):
        assert main(["check", path]) == 0
        out = capsys.readouterr().out
        assert out.startswith("status=ok")


def test_check_flags_corrupted_sign(tmp_path, capsys):
    def corrupt(mu):
        V = mu.carrier
        one = V.field.one
        table = dict(mu.mu(2).table)
        t, dt = (0, 1), (-1, 0)
        table[(t, dt)] = {(-1, 1): -one}  # flipped sign breaks the relation
        from ainfinity.ainfty import AInfinity
        return AInfinity(V, mu.differential, {2: MultiMap(V, V, 2, 0, table)},
                         mu.truncation)

    path = forms_doc(tmp_path, "broken.json", mutate=corrupt)
    assert main(["check", path]) == 1
    out = capsys.readouterr().out
    assert "status=fail" in out
    assert "check.structure.2.nonzero=" in out
    line = [l for l in out.splitlines() if l.startswith("check.structure.2")][0]
    assert not line.endswith("=0")


def test_check_empty_products_is_complex_check(tmp_path, capsys):
    mu = instance_massey()
    from ainfinity.ainfty import AInfinity
    bare = AInfinity(mu.carrier, mu.differential, {}, 5)
    doc = Document(mu.carrier.field, 5, {"V": mu.carrier}, structure=("V", bare))
    path = str(tmp_path / "bare.json")
    dump(doc, path)
    assert main(["check", path]) == 0
    out = capsys.readouterr().out
    assert "check.structure.1.nonzero=0" in out


def test_check_exit_two_on_garbage(tmp_path, capsys):
    path = str(tmp_path / "garbage.json")
    with open(path, "w") as fh:
        fh.write("{not json")
    assert main(["check", path]) == 2
    assert main(["check", str(tmp_path / "missing.json")]) == 2


# ---------------------------------------------------------------- transfer

def test_transfer_both_massey(tmp_path, capsys):
    src = massey_doc(tmp_path)
    out = str(tmp_path / "out.json")
    code = main(["transfer", src, "--method", "both", "--retract", "auto",
                 "--arity", "5", "-o", out])
    report = capsys.readouterr().out
    assert code == 0
    assert "compare.status=exact" in report
    assert "output.products=3" in report  # the triple product survives
    # the written document checks out on its own
    assert main(["check", out]) == 0


def test_transfer_hpl_method(tmp_path, capsys):
    src = forms_doc(tmp_path)
    out = str(tmp_path / "out-hpl.json")
    code = main(["transfer", src, "--method", "hpl", "--retract", "auto",
                 "-o", out])
    report = capsys.readouterr().out
    assert code == 0
    assert "hpl.extraction=canonical" in report
    assert main(["check", out]) == 0


def test_transfer_with_explicit_retract_block(tmp_path, capsys):
    # write a document carrying its own retract, then transfer without auto
    from ainfinity.graded import ChainComplex
    from ainfinity.retracts import harmonious_retract
    mu = instance_forms()
    retract = harmonious_retract(ChainComplex(mu.carrier, mu.differential))
    doc = Document(mu.carrier.field, 5,
                   {"V": mu.carrier, "W": retract.small.module},
                   structure=("V", mu),
                   retract={"big": "V", "small": "W", "f": retract.f,
                            "g": retract.g, "h": retract.h,
                            "small_d": retract.small.d})
    path = str(tmp_path / "with-retract.json")
    dump(doc, path)
    assert main(["transfer", path, "--method", "kernels"]) == 0
    capsys.readouterr()


def test_transfer_h_zero_retract_strict_morphisms(tmp_path, capsys):
    # an identity retract document: transferred morphisms are strict
    mu = instance_forms()
    V = mu.carrier
    doc = Document(V.field, 4, {"V": V}, structure=("V", mu),
                   retract={"big": "V", "small": "V",
                            "f": MultiMap.identity(V),
                            "g": MultiMap.identity(V),
                            "h": MultiMap.zero(V, V, 1, 1),
                            "small_d": mu.differential})
    path = str(tmp_path / "hzero.json")
    dump(doc, path)
    out = str(tmp_path / "hzero-out.json")
    assert main(["transfer", path, "--method", "kernels", "-o", out]) == 0
    capsys.readouterr()
    result = load(out)
    assert sorted(result.transfer["phi"]) == [1]
    assert sorted(result.transfer["psi"]) == [1]
    assert sorted(result.transfer["homotopy"]) == []


def test_transfer_of_bare_complex_returns_input_data(tmp_path, capsys):
    # no products: the transferred structure has none and all higher
    # morphism data is strict
    mu = instance_massey()
    from ainfinity.ainfty import AInfinity
    bare = AInfinity(mu.carrier, mu.differential, {}, 4)
    doc = Document(mu.carrier.field, 4, {"V": mu.carrier}, structure=("V", bare))
    path = str(tmp_path / "bare.json")
    dump(doc, path)
    out = str(tmp_path / "bare-out.json")
    assert main(["transfer", path, "--method", "both", "--retract", "auto",
                 "-o", out]) == 0
    report = capsys.readouterr().out
    assert "output.products=\n" in report + "\n"  # empty product list
    result = load(out)
    _, nu = result.structure
    assert not nu.products
    assert sorted(result.transfer["phi"]) == [1]
    assert sorted(result.transfer["homotopy"]) == [1]  # just h itself


def test_transfer_without_retract_is_input_error(tmp_path, capsys):
    src = massey_doc(tmp_path)
    assert main(["transfer", src, "--method", "kernels"]) == 2
    capsys.readouterr()


def test_transfer_deterministic_output(tmp_path, capsys):
    src = massey_doc(tmp_path)
    out1 = str(tmp_path / "a.json")
    out2 = str(tmp_path / "b.json")
    main(["transfer", src, "--method", "kernels", "--retract", "auto", "-o", out1])
    main(["transfer", src, "--method", "kernels", "--retract", "auto", "-o", out2])
    capsys.readouterr()
    assert open(out1).read() == open(out2).read()


# ---------------------------------------------------------------- selftest

def test_selftest_empty(capsys):
    assert main(["selftest", "--corpus-size", "0", "--seed", "1",
                 "--arity", "3"]) == 0
    out = capsys.readouterr().out
    assert "passed=0/0" in out


def test_selftest_small_is_deterministic(capsys):
    assert main(["selftest", "--corpus-size", "2", "--seed", "5",
                 "--arity", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["selftest", "--corpus-size", "2", "--seed", "5",
                 "--arity", "3"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "passed=2/2" in first


def test_selftest_failure_embeds_reproduction_line(capsys, monkeypatch):
    # corrupt a sign primitive so a real instance fails, then check the
    # failure contract: nonzero exit and a reproduction command line
    from ainfinity import signs

    monkeypatch.setattr(signs, "theta", lambda parts: 1)
    code = main(["selftest", "--corpus-size", "1", "--seed", "1",
                 "--arity", "4"])
    out = capsys.readouterr().out
    assert code == 1
    assert "status=fail" in out
    assert "selftest --corpus-size 1 --seed 1 --arity 4" in out
