"""Every case of the golden manifest, run through the command handlers."""

import asyncio
import json

import pytest

from gradia.commands import check_file, eq_files, erase_file, eval_file, translate_file
from gradia.schemas import Invocation

from conftest import GOLDEN

HANDLERS = {
    "check": check_file,
    "eval": eval_file,
    "erase": erase_file,
    "translate": translate_file,
}

CASES = json.loads((GOLDEN / "manifest.json").read_text(encoding="utf-8"))


def _invocation(case: dict) -> Invocation:
    options = dict(case["options"])
    lattice = options.get("lattice")
    if lattice and lattice.endswith(".lat"):
        options["lattice"] = str(GOLDEN / lattice)
    return Invocation(command=case["command"], inputs=[GOLDEN / f for f in case["files"]], **options)


def _run(case: dict):
    inv = _invocation(case)
    if inv.command == "eq":
        return asyncio.run(eq_files(inv))
    return asyncio.run(HANDLERS[inv.command](inv, inv.inputs[0]))


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden(case):
    result = _run(case)
    assert result.exit_code == case["exit"], result.error
    if "output" in case:
        assert result.output == case["output"]
    if "rule" in case:
        assert case["rule"] in result.error
    if "code" in case:
        assert case["code"] in result.error


def test_manifest_files_exist():
    for case in CASES:
        for name in case["files"]:
            assert (GOLDEN / name).exists(), name
