import json
import os
import pathlib

import pytest

FIXTURES = pathlib.Path(os.environ.get("NEWSATTN_FIXTURE_DIR", pathlib.Path(__file__).parents[1] / "fixtures"))


@pytest.fixture(scope="session")
def synth_config():
    return json.loads((FIXTURES / "fixture_synth.json").read_text())


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory, synth_config):
    import newsattn

    d = tmp_path_factory.mktemp("corpus")
    newsattn.write_synth_corpus(d, synth_config)
    return d
