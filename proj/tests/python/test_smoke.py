import os
import pathlib

import pytest

import divide_forge as df

DATA = pathlib.Path(os.environ.get("DIVIDE_FORGE_DATA", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_cable_data_of_the_one_branch_example():
    cd = df.cable_data([(2, 3), (2, 7)])
    assert cd["lambda"] == [3, 13]
    assert cd["bprime"] == [3, 9]
    assert cd["mu"] == 16
    assert cd["reduction_count"] == 2


def test_synth_then_analyze():
    text = df.synth([(2, 3), (2, 7)])
    assert text.startswith("divide v1")
    r = df.analyze(text, matrices=False)
    assert r["divide"]["mu"] == 16
    assert r["monodromy"]["degree"] == 16
    assert r["order"]["order"] == 156
    assert r["puiseux"]["mu_matches_divide"]


def test_cusp_char_poly():
    r = df.analyze(df.synth([(2, 3)]))
    assert r["monodromy"]["char_poly"] == [1, -1, 1]
    assert r["order"]["order"] == 6


def test_verify_words():
    text = df.synth([(2, 3), (2, 7)])
    assert df.verify(text, "Mono^156")["equal"]
    cusp = df.synth([(2, 3)])
    r = df.verify(cusp, "Mono")
    assert not r["equal"]
    assert r["first_differing_column"] is not None


def test_two_branch_fixture():
    divide = (DATA / "two_branch.divide").read_text()
    classes = (DATA / "two_branch.classes").read_text()
    r = df.verify(divide, "Mono^10", "Mono^5 Mono^5", classes=classes)
    assert r["relations_hold"]
    assert r["equal"]
    assert df.analyze(divide)["order"]["exceeds_bound"]


def test_render_is_deterministic():
    text = df.synth([(2, 3), (2, 7)])
    a = df.render(text, labels=True)
    assert a == df.render(text, labels=True)
    assert 'id="crossing-c7"' in a


def test_block_crossings():
    assert len(df.cheb_crossings(7, 5)) == 12


def test_errors_surface_as_value_errors():
    with pytest.raises(df.DivideForgeError, match="NotCoprime"):
        df.synth([(2, 4)])
    with pytest.raises(ValueError, match="ParseError"):
        df.analyze("not a divide")
    with pytest.raises(df.DivideForgeError, match="UnknownName"):
        df.verify(df.synth([(2, 3)]), "Tw(zz)")
