import json

import pytest
from helpers import FIXTURES
from make_fixtures import main as regenerate


def corpus(root):
    return {p.relative_to(root).as_posix(): json.loads(p.read_text()) for p in sorted(root.rglob("*.json"))}


def test_generator_reproduces_the_corpus(tmp_path):
    regenerate(tmp_path)
    assert corpus(tmp_path) == corpus(FIXTURES)


@pytest.mark.parametrize("name", sorted(corpus(FIXTURES)))
def test_every_fixture_declares_the_schema(name):
    raw = json.loads((FIXTURES / name).read_text())
    if name != "negative/bad_key.json":
        assert raw.get("schema") == 1
