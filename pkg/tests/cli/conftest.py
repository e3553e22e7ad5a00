"""Fixtures for command line tests."""

from __future__ import annotations

from collections.abc import Callable, Iterator
import json
from pathlib import Path
from typing import Any

import pytest

from tncsketch.cli import main
from tncsketch.const import ENV_SEED, LOGGER
from tncsketch.data import EdgeList
from tncsketch.network import TensorNetwork, dump_network

type RunCli = Callable[..., tuple[int, Any]]


@pytest.fixture(autouse=True)
def restore_logger(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """main() installs its own handler; give the package logger back afterwards."""
    monkeypatch.delenv(ENV_SEED, raising=False)
    handlers, level, propagate = list(LOGGER.handlers), LOGGER.level, LOGGER.propagate
    yield
    LOGGER.handlers[:] = handlers
    LOGGER.setLevel(level)
    LOGGER.propagate = propagate


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> RunCli:
    """Run main() and return the exit code with the parsed stdout document."""

    def run(*argv: str, lines: bool = False) -> tuple[int, Any]:
        code = main([*argv, "-q"])
        out = capsys.readouterr().out
        if lines:
            return code, [json.loads(line) for line in out.splitlines() if line]
        return code, json.loads(out) if out.strip() else None

    return run


@pytest.fixture
def network_file(tmp_path: Path) -> Callable[[TensorNetwork, str], str]:
    """Write a network to a file in tmp_path and return the path."""

    def write(net: TensorNetwork, name: str = "net.json") -> str:
        path = tmp_path / name
        dump_network(net, path)
        return str(path)

    return write


@pytest.fixture
def k4_file(tmp_path: Path, k4: EdgeList) -> str:
    """Edge-list file of the complete directed graph on 4 nodes."""
    path = tmp_path / "k4.txt"
    path.write_text("\n".join([str(k4.n), *(f"{u} {v}" for u, v in k4.edges)]) + "\n", encoding="utf-8")
    return str(path)
