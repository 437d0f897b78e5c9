import pathlib

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
CORPUS_DIR = FIXTURES / "corpus"
EDGE_DIR = FIXTURES / "edge"

CORPUS = sorted(CORPUS_DIR.glob("*.txt"))


def corpus_ids():
    return [p.name for p in CORPUS]
