import json

import pytest

from uccakit import (
    FILE_EXTENSION,
    FORMAT_VERSION,
    MalformedDocument,
    UnsupportedVersion,
    canonical_json_bytes,
    from_interchange,
    isomorphic,
    parse_passage,
    to_interchange,
    validate,
)

from conftest import CORPUS, corpus_ids

EXPECTED_SMALL = """\
{
  "edges": [
    {
      "categories": [
        "H"
      ],
      "child": "1",
      "parent": "0",
      "remote": false
    },
    {
      "categories": [
        "A"
      ],
      "child": "2",
      "parent": "1",
      "remote": false
    }
  ],
  "format_version": "1",
  "id": "passage",
  "tokens": [
    {
      "is_punct": false,
      "text": "apple"
    }
  ],
  "units": [
    {
      "id": "0",
      "kind": "internal",
      "tokens": []
    },
    {
      "id": "1",
      "kind": "internal",
      "tokens": []
    },
    {
      "id": "2",
      "kind": "terminal",
      "tokens": [
        0
      ]
    }
  ]
}
"""


def small_doc(**replace):
    doc = json.loads(EXPECTED_SMALL)
    doc.update(replace)
    return canonical_json_bytes(doc)


class TestCanonicalBytes:
    def test_golden_small_passage(self):
        data = to_interchange(parse_passage("[H [A apple] ]"))
        assert data.decode("utf-8") == EXPECTED_SMALL

    def test_trailing_newline_and_no_ascii_escapes(self):
        data = canonical_json_bytes({"text": "café"})
        assert data.endswith(b"\n")
        assert "café".encode("utf-8") in data

    def test_keys_sorted(self):
        data = canonical_json_bytes({"b": 1, "a": 2})
        assert data.index(b'"a"') < data.index(b'"b"')

    def test_non_ascii_token_survives(self):
        p = parse_passage("[H [A café] [P closed] ]")
        q = from_interchange(to_interchange(p))
        assert [t.text for t in q.tokens] == ["café", "closed"]

    def test_extension_constant(self):
        assert FILE_EXTENSION == ".ucca.json"
        assert FORMAT_VERSION == "1"


class TestRoundTrip:
    @pytest.mark.parametrize("path", CORPUS, ids=corpus_ids())
    def test_corpus_bytes_idempotent(self, path):
        first = to_interchange(parse_passage(path.read_text()))
        assert to_interchange(from_interchange(first)) == first

    @pytest.mark.parametrize("path", CORPUS, ids=corpus_ids())
    def test_corpus_bytes_survive_notation_detour(self, path):
        from uccakit import render

        pid = path.name.removesuffix(".txt")
        data = to_interchange(parse_passage(path.read_text(), passage_id=pid))
        text = render(from_interchange(data))
        assert to_interchange(parse_passage(text, passage_id=pid)) == data

    @pytest.mark.parametrize("path", CORPUS, ids=corpus_ids())
    def test_corpus_graph_preserved(self, path):
        p = parse_passage(path.read_text())
        q = from_interchange(to_interchange(p))
        assert isomorphic(p, q)
        assert validate(q) == validate(p)

    def test_passage_id_preserved(self):
        p = parse_passage("[H [A apple] ]", passage_id="sample-7")
        assert from_interchange(to_interchange(p)).id == "sample-7"

    def test_accepts_str_input(self):
        p = parse_passage("[H [A apple] ]")
        assert isomorphic(p, from_interchange(to_interchange(p).decode("utf-8")))

    def test_coverage_gap_tolerated(self):
        # A document may cover only part of its tokens; the validator,
        # not the reader, reports the gap.
        doc = json.loads(EXPECTED_SMALL)
        doc["tokens"].append({"is_punct": False, "text": "stray"})
        p = from_interchange(canonical_json_bytes(doc))
        assert [d.rule for d in validate(p)] == ["R10"]


class TestRejects:
    def test_bad_utf8(self):
        with pytest.raises(MalformedDocument, match="UTF-8"):
            from_interchange(b"\xff\xfe{}")

    def test_bad_json(self):
        with pytest.raises(MalformedDocument, match="JSON"):
            from_interchange(b"{nope")

    def test_non_object_document(self):
        with pytest.raises(MalformedDocument, match="object"):
            from_interchange(b"[1, 2]")

    def test_missing_version(self):
        doc = json.loads(EXPECTED_SMALL)
        del doc["format_version"]
        with pytest.raises(MalformedDocument, match="format_version"):
            from_interchange(canonical_json_bytes(doc))

    def test_future_version(self):
        with pytest.raises(UnsupportedVersion, match="'99'"):
            from_interchange(small_doc(format_version="99"))

    def test_future_version_is_malformed_subclass(self):
        assert issubclass(UnsupportedVersion, MalformedDocument)

    def test_missing_tables(self):
        for key in ("tokens", "units", "edges"):
            doc = json.loads(EXPECTED_SMALL)
            del doc[key]
            with pytest.raises(MalformedDocument, match=key):
                from_interchange(canonical_json_bytes(doc))

    def test_non_string_id(self):
        with pytest.raises(MalformedDocument, match="'id'"):
            from_interchange(small_doc(id=3))

    def test_token_not_object(self):
        with pytest.raises(MalformedDocument, match="token 0"):
            from_interchange(small_doc(tokens=["apple"]))

    def test_token_missing_text(self):
        with pytest.raises(MalformedDocument, match="text"):
            from_interchange(small_doc(tokens=[{"is_punct": False}]))

    def test_unknown_unit_kind(self):
        doc = json.loads(EXPECTED_SMALL)
        doc["units"][2]["kind"] = "leaf"
        with pytest.raises(MalformedDocument, match="leaf"):
            from_interchange(canonical_json_bytes(doc))

    def test_unit_tokens_must_be_ints(self):
        doc = json.loads(EXPECTED_SMALL)
        doc["units"][2]["tokens"] = ["0"]
        with pytest.raises(MalformedDocument, match="integers"):
            from_interchange(canonical_json_bytes(doc))

    def test_edge_missing_field(self):
        doc = json.loads(EXPECTED_SMALL)
        del doc["edges"][0]["child"]
        with pytest.raises(MalformedDocument, match="child"):
            from_interchange(canonical_json_bytes(doc))

    def test_edge_bad_category(self):
        doc = json.loads(EXPECTED_SMALL)
        doc["edges"][1]["categories"] = ["A", "ZZ"]
        with pytest.raises(MalformedDocument, match="edge 1"):
            from_interchange(canonical_json_bytes(doc))

    def test_edge_remote_must_be_bool(self):
        doc = json.loads(EXPECTED_SMALL)
        doc["edges"][1]["remote"] = "yes"
        with pytest.raises(MalformedDocument, match="remote"):
            from_interchange(canonical_json_bytes(doc))

    def test_structural_problems_use_build_errors(self):
        from uccakit import BuildError

        doc = json.loads(EXPECTED_SMALL)
        doc["edges"][1]["child"] = "9"
        with pytest.raises(BuildError):
            from_interchange(canonical_json_bytes(doc))
