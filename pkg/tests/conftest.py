import json
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from centrality_pruning import kernels
from centrality_pruning.tensor_io import write_npy


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return request.param


def conv_layer(name, n, c, k=3, out=(32, 32), bias=True, next_layer=None, flatten_factor=None):
    return {
        "name": name, "kind": "conv", "n": n, "kernel_h": k, "kernel_w": k, "c": c,
        "out_h": out[0], "out_w": out[1], "has_bias": bias, "weights_path": f"{name}.npy",
        "next_layer": next_layer, "flatten_factor": flatten_factor,
    }


def fc_layer(name, n_in, n_out, bias=True):
    return {
        "name": name, "kind": "fully_connected", "n": n_out, "kernel_h": 1, "kernel_w": 1,
        "c": n_in, "out_h": 1, "out_w": 1, "has_bias": bias, "weights_path": f"{name}.npy",
        "next_layer": None, "flatten_factor": None,
    }


def write_model(directory, layers, weights=None, seed=0):
    """Write a manifest plus weight files; returns the manifest path.
    ``weights`` maps layer name -> array; missing layers get seeded random float32."""
    rng = np.random.default_rng(seed)
    weights = dict(weights or {})
    for layer in layers:
        if layer["name"] not in weights:
            shape = ((layer["n"], layer["kernel_h"], layer["kernel_w"], layer["c"])
                     if layer["kind"] == "conv" else (layer["n"], layer["c"]))
            weights[layer["name"]] = rng.standard_normal(shape).astype(np.float32)
        write_npy(os.path.join(directory, layer["weights_path"]), weights[layer["name"]])
    path = os.path.join(directory, "model.json")
    with open(path, "w") as fh:
        json.dump({"layers": layers}, fh)
    return path


@pytest.fixture
def model_dir(tmp_path):
    return tmp_path


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
