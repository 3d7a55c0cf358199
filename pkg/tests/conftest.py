import asyncio

import numpy as np
import pytest
import ujson

from coollab import CoolLab, RngSeed, Settings


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ('COOLLAB_SEED', 'COOLLAB_WORKERS', 'COOLLAB_LOG_LEVEL'):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng():
    return RngSeed(20240501).generator()


@pytest.fixture
def lab():
    lab = CoolLab(seed=7, workers=2, settings=Settings())
    yield lab
    loop = asyncio.new_event_loop()
    loop.run_until_complete(lab.close())
    loop.close()


@pytest.fixture
def write_json(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(ujson.dumps(payload))
        return str(path)
    return write


def matrix_payload(m):
    m = np.asarray(m, dtype=complex)
    return {'dim': m.shape[0], 're': m.real.tolist(), 'im': m.imag.tolist()}
