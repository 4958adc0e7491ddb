import json

import pytest

from yoshida import dsl
from yoshida import groupoid as gpd


def test_single_component():
    spec = dsl.parse_spec("groupoid G { component a { isotropy = cyclic(2); objects = 2; } }")
    assert spec.name == "G" and len(spec.components) == 1
    G = dsl.build(spec)
    assert (G.n_objects, G.n_morphisms) == (2, 8)
    assert gpd.is_connected(G)


def test_two_components_with_comments():
    text = """
    # a cyclic and a symmetric component
    groupoid H {
      component a { isotropy = cyclic(3); objects = 1; }   # C3
      component b { isotropy = symmetric(3); objects = 1; }
    }
    """
    spec = dsl.parse_spec(text)
    assert [c.isotropy for c in spec.components] == ["cyclic(3)", "symmetric(3)"]
    G = dsl.build(spec)
    assert gpd.connected_components(G).n_components == 2
    assert G.n_morphisms == 9


def test_klein_and_table(data_dir):
    text = 'groupoid K { component a { isotropy = klein4; objects = 1; }\n' \
           '  component b { isotropy = table("s3.tbl"); objects = 2; } }'
    G = dsl.build(dsl.parse_spec(text, data_dir))
    assert G.n_morphisms == 4 + 6 * 4


@pytest.mark.parametrize("text, line, col", [
    ("groupoid G { component a { isotropy = cyclic(2); objects = 0; } }", 1, 60),
    ("groupoid G {\n  component a { isotropy = cyclic(2) objects = 1; }\n}", 2, 38),
    ("groupoid G { }", 1, 14),
    ("groupoid G { component a { isotropy = cyclic(2); objects = 1; } } extra", 1, 67),
    ("groupoid G { component a { isotropy = cyclic(0); objects = 1; } }", 1, 46),
    ("groupoid G { component a { isotropy = cyclic(2); objects = 1; } $", 1, 65),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(dsl.SpecSyntaxError) as info:
        dsl.parse_spec(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_unknown_group_expression():
    with pytest.raises(dsl.UnknownGroupExpr):
        dsl.parse_spec("groupoid G { component a { isotropy = dihedral(4); objects = 1; } }")


def test_missing_table_file(tmp_path):
    spec = dsl.parse_spec('groupoid G { component a { isotropy = table("nope.tbl"); objects = 1; } }',
                          tmp_path)
    with pytest.raises(FileNotFoundError):
        dsl.build(spec)


def test_load_raw_json(tmp_path):
    path = tmp_path / "p2.json"
    path.write_text(json.dumps(gpd.pair_groupoid(2).to_raw()))
    spec, G = dsl.load(path)
    assert spec.raw is not None and G.n_morphisms == 4


def test_load_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(dsl.SpecError):
        dsl.load(path)


def test_sample_files_load(data_dir):
    for name in ("c2_pair2.gpd", "union.gpd", "s3_pair2.gpd", "c2.json"):
        dsl.load(data_dir / name)
