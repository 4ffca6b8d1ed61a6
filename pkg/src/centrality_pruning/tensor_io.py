"""Reading weight tensors (``.npy`` v1/v2) and the JSON architecture manifest."""

from __future__ import annotations

import ast
import json
import math
import os
import struct
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import (
    BadMagic,
    DanglingReference,
    FortranOrderUnsupported,
    MalformedHeader,
    NonFiniteValue,
    SchemaError,
    ShapeConflict,
    ShapeMismatch,
    UnsupportedDtype,
)

MAGIC = b"\x93NUMPY"
_DTYPES = {"<f4": np.dtype("<f4"), "<f8": np.dtype("<f8")}
_HEADER_KEYS = {"descr", "fortran_order", "shape"}


@dataclass(frozen=True)
class Tensor:
    """Immutable C-order float tensor."""

    shape: tuple[int, ...]
    data: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        if math.prod(self.shape) != self.data.size:
            raise ShapeMismatch(f"shape {self.shape} does not match {self.data.size} values")
        self.data.flags.writeable = False

    @property
    def dtype(self) -> np.dtype:
        return self.data.dtype


def parse_npy(buf: bytes) -> Tensor:
    buf = bytes(buf)
    if not buf.startswith(MAGIC):
        raise BadMagic("missing \\x93NUMPY magic")
    if len(buf) < 10:
        raise MalformedHeader("truncated preamble")
    major, minor = buf[6], buf[7]
    if minor != 0 or major not in (1, 2):
        raise MalformedHeader(f"unsupported format version {major}.{minor}")
    if major == 1:
        (hlen,) = struct.unpack_from("<H", buf, 8)
        start = 10
    else:
        if len(buf) < 12:
            raise MalformedHeader("truncated preamble")
        (hlen,) = struct.unpack_from("<I", buf, 8)
        start = 12
    end = start + hlen
    if end > len(buf):
        raise MalformedHeader("header length exceeds file size")
    header = _parse_header(buf[start:end])

    dtype = _DTYPES[header["descr"]]
    shape = header["shape"]
    payload = memoryview(buf)[end:]
    expected = math.prod(shape) * dtype.itemsize
    if len(payload) != expected:
        raise ShapeMismatch(
            f"payload has {len(payload)} bytes, shape {shape} needs {expected}"
        )
    data = np.frombuffer(payload, dtype=dtype).reshape(shape).copy()
    if not np.isfinite(data).all():
        raise NonFiniteValue("tensor contains NaN or infinity")
    return Tensor(shape, data)


def _parse_header(raw: bytes) -> dict:
    try:
        text = raw.decode("ascii")
        header = ast.literal_eval(text.strip())
    except Exception as exc:  # literal_eval can raise almost anything on garbage
        raise MalformedHeader(f"unreadable header: {type(exc).__name__}") from None
    if not isinstance(header, dict) or set(header) != _HEADER_KEYS:
        raise MalformedHeader("header must be a dict with descr, fortran_order, shape")
    descr = header["descr"]
    if not isinstance(descr, str) or descr not in _DTYPES:
        raise UnsupportedDtype(f"dtype {descr!r} not supported (only <f4, <f8)")
    fortran = header["fortran_order"]
    if not isinstance(fortran, bool):
        raise MalformedHeader("fortran_order must be a bool")
    if fortran:
        raise FortranOrderUnsupported("fortran_order=True is not supported")
    shape = header["shape"]
    if (
        not isinstance(shape, tuple)
        or not shape
        or not all(type(d) is int and d >= 1 for d in shape)
    ):
        raise MalformedHeader(f"shape must be a non-empty tuple of positive ints, got {shape!r}")
    return {"descr": descr, "fortran_order": False, "shape": shape}


def to_npy(array: np.ndarray) -> bytes:
    """Serialize a float32/float64 array as a version 1.0 (or 2.0 if the
    header does not fit) ``.npy`` byte string."""
    array = np.asarray(array)
    dtype = array.dtype.newbyteorder("<") if array.dtype.byteorder == ">" else array.dtype
    descr = dtype.str
    if descr not in _DTYPES:
        raise UnsupportedDtype(f"cannot write dtype {array.dtype}")
    if array.ndim == 0:
        raise ShapeMismatch("scalar arrays are not supported")
    shape = repr(tuple(int(d) for d in array.shape))
    text = f"{{'descr': '{descr}', 'fortran_order': False, 'shape': {shape}, }}"
    for major, fmt, pre in ((1, "<H", 10), (2, "<I", 12)):
        pad = -(pre + len(text) + 1) % 64
        hlen = len(text) + pad + 1
        if hlen < 2 ** (8 * struct.calcsize(fmt)):
            break
    header = MAGIC + bytes([major, 0]) + struct.pack(fmt, hlen)
    header += (text + " " * pad + "\n").encode("ascii")
    return header + np.ascontiguousarray(array, dtype=_DTYPES[descr]).tobytes()


def read_npy(path: str | os.PathLike) -> Tensor:
    with open(path, "rb") as fh:
        return parse_npy(fh.read())


def write_npy(path: str | os.PathLike, array: np.ndarray) -> None:
    with open(path, "wb") as fh:
        fh.write(to_npy(array))


# --------------------------------------------------------------------------
# Manifest

KINDS = ("conv", "fully_connected")


@dataclass(frozen=True)
class LayerSpec:
    name: str
    kind: str
    n: int
    kernel_h: int
    kernel_w: int
    c: int
    out_h: int
    out_w: int
    has_bias: bool
    weights_path: str
    next_layer: str | None = None
    flatten_factor: int | None = None

    @property
    def is_conv(self) -> bool:
        return self.kind == "conv"

    @property
    def weight_shape(self) -> tuple[int, ...]:
        if self.is_conv:
            return (self.n, self.kernel_h, self.kernel_w, self.c)
        return (self.n, self.c)


@dataclass(frozen=True)
class ModelManifest:
    layers: tuple[LayerSpec, ...]
    tensors: Mapping[str, Tensor] = field(repr=False, compare=False, default_factory=dict)

    def __getitem__(self, name: str) -> LayerSpec:
        for layer in self.layers:
            if layer.name == name:
                return layer
        raise KeyError(name)

    def __contains__(self, name: object) -> bool:
        return any(layer.name == name for layer in self.layers)

    @property
    def names(self) -> list[str]:
        return [layer.name for layer in self.layers]

    def predecessor(self, name: str) -> LayerSpec | None:
        for layer in self.layers:
            if layer.next_layer == name:
                return layer
        return None

    def filters(self, name: str) -> np.ndarray:
        """Weights of a conv layer as an (n, kernel_h, kernel_w, c) float64 array."""
        return np.asarray(self.tensors[name].data, dtype=np.float64)


_INT_FIELDS = ("n", "kernel_h", "kernel_w", "c", "out_h", "out_w")
_FIELDS = {"name", "kind", *_INT_FIELDS, "has_bias", "weights_path", "next_layer", "flatten_factor"}


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _layer_from_json(i: int, raw) -> LayerSpec:
    if not isinstance(raw, dict):
        raise SchemaError(f"layers[{i}] must be an object")
    unknown = set(raw) - _FIELDS
    if unknown:
        raise SchemaError(f"layers[{i}]: unknown keys {sorted(unknown)}")
    missing = (_FIELDS - {"next_layer", "flatten_factor"}) - set(raw)
    if missing:
        raise SchemaError(f"layers[{i}]: missing keys {sorted(missing)}")
    if not isinstance(raw["name"], str) or not raw["name"]:
        raise SchemaError(f"layers[{i}]: name must be a non-empty string")
    name = raw["name"]
    if raw["kind"] not in KINDS:
        raise SchemaError(f"{name}: kind must be one of {KINDS}")
    for key in _INT_FIELDS:
        if not _is_int(raw[key]) or raw[key] < 1:
            raise SchemaError(f"{name}: {key} must be an integer >= 1")
    if not isinstance(raw["has_bias"], bool):
        raise SchemaError(f"{name}: has_bias must be a bool")
    if not isinstance(raw["weights_path"], str):
        raise SchemaError(f"{name}: weights_path must be a string")
    nxt = raw.get("next_layer")
    if nxt is not None and not isinstance(nxt, str):
        raise SchemaError(f"{name}: next_layer must be a string or null")
    ff = raw.get("flatten_factor")
    if ff is not None and (not _is_int(ff) or ff < 1):
        raise SchemaError(f"{name}: flatten_factor must be an integer >= 1 or null")
    return LayerSpec(
        name=name,
        kind=raw["kind"],
        n=raw["n"],
        kernel_h=raw["kernel_h"],
        kernel_w=raw["kernel_w"],
        c=raw["c"],
        out_h=raw["out_h"],
        out_w=raw["out_w"],
        has_bias=raw["has_bias"],
        weights_path=raw["weights_path"],
        next_layer=nxt,
        flatten_factor=ff,
    )


def _check_links(layers: list[LayerSpec]) -> None:
    by_name = {layer.name: layer for layer in layers}
    targets: dict[str, str] = {}
    for layer in layers:
        if layer.next_layer is None:
            continue
        if layer.next_layer not in by_name:
            raise DanglingReference(f"{layer.name}: next_layer {layer.next_layer!r} is not in the manifest")
        if layer.next_layer in targets:
            raise SchemaError(
                f"{layer.next_layer!r} is fed by both {targets[layer.next_layer]!r} and {layer.name!r}; "
                "only sequential chains are supported"
            )
        targets[layer.next_layer] = layer.name
        nxt = by_name[layer.next_layer]
        expected = layer.n * (layer.flatten_factor or 1) if not nxt.is_conv else layer.n
        if nxt.c != expected:
            raise SchemaError(
                f"{nxt.name}: c={nxt.c} but {layer.name} feeds {expected} input channels"
            )
    for layer in layers:
        seen = {layer.name}
        cur = layer
        while cur.next_layer is not None:
            if cur.next_layer in seen:
                raise SchemaError(f"channel-coupling cycle through {cur.next_layer!r}")
            seen.add(cur.next_layer)
            cur = by_name[cur.next_layer]


def load_manifest(text: str | bytes, base_dir: str | os.PathLike | None = None) -> ModelManifest:
    """Parse and validate a manifest; weights paths resolve against ``base_dir``
    (default: current directory) and every weight file is loaded and shape-checked."""
    try:
        doc = json.loads(text)
    except (ValueError, UnicodeDecodeError) as exc:
        raise SchemaError(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"layers"} or not isinstance(doc["layers"], list):
        raise SchemaError('manifest must be an object with a single "layers" list')
    if not doc["layers"]:
        raise SchemaError("manifest has no layers")
    layers = [_layer_from_json(i, raw) for i, raw in enumerate(doc["layers"])]
    names = [layer.name for layer in layers]
    if len(set(names)) != len(names):
        raise SchemaError("layer names must be unique")
    _check_links(layers)

    base = os.fspath(base_dir) if base_dir is not None else "."
    tensors = {}
    for layer in layers:
        path = os.path.join(base, layer.weights_path)
        try:
            tensor = read_npy(path)
        except OSError as exc:
            raise SchemaError(f"{layer.name}: cannot read weights {layer.weights_path!r}: {exc.strerror}") from None
        if tensor.shape != layer.weight_shape:
            raise ShapeConflict(
                f"{layer.name}: weights have shape {tensor.shape}, manifest declares {layer.weight_shape}"
            )
        tensors[layer.name] = tensor
    return ModelManifest(tuple(layers), tensors)


def read_manifest(path: str | os.PathLike) -> tuple[ModelManifest, bytes]:
    """Load a manifest file; returns the manifest and the raw bytes (for digests)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    return load_manifest(raw, os.path.dirname(os.fspath(path)) or "."), raw
