import os
import subprocess
import sys
import tempfile

import pytest

from mcg_certs.certificates.cover import build_paper_map
from mcg_certs.core import CertificationEngine


def _run_twice(args):
    outputs = []
    with tempfile.TemporaryDirectory() as tmp:
        for i in range(2):
            path = os.path.join(tmp, f"run{i}")
            result = subprocess.run(
                [sys.executable, '-m', 'mcg_certs.cli.certify', *args, '--output', path],
                capture_output=True,
                text=True,
            )
            assert result.returncode == 0, result.stderr
            with open(path, 'rb') as f:
                outputs.append(f.read())

    return outputs


@pytest.mark.parametrize('args', [
    ['cover', '--degree-range', '2..12'],
    ['spread', '--genus-range', '580..700'],
    ['witness', '--random-genus', '5', '--k', '4'],
    ['paper-example', '--genus', '2000'],
    ['surjectivity-sanity'],
])
def test_cli_output_is_byte_identical(args):
    first, second = _run_twice(args)
    assert first == second


def test_idempotent_example_map():
    assert build_paper_map(9) == build_paper_map(9)


def test_idempotent_planted_matrix():
    engine = CertificationEngine(seed=3)
    assert engine.planted_matrix(5, 4) == engine.planted_matrix(5, 4)
