"""Whole-model pruning plans with parameter / MAC accounting.

One MAC is one multiply plus one accumulate. Only conv and fully connected
layers carry cost; pooling, activations and normalization count as zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .centrality import PruneSelection
from .errors import EmptyLayer, InvalidCounts, NotPrunable, UnknownLayer
from .tensor_io import LayerSpec, ModelManifest


@dataclass(frozen=True)
class LayerCost:
    params: int = 0
    macs: int = 0

    def __add__(self, other: "LayerCost") -> "LayerCost":
        return LayerCost(self.params + other.params, self.macs + other.macs)


def layer_cost(spec: LayerSpec, active_in_channels: int, active_filters: int) -> LayerCost:
    if not 1 <= active_in_channels <= spec.c:
        raise InvalidCounts(f"{spec.name}: active_in_channels={active_in_channels} outside [1, {spec.c}]")
    if not 1 <= active_filters <= spec.n:
        raise InvalidCounts(f"{spec.name}: active_filters={active_filters} outside [1, {spec.n}]")
    bias = active_filters if spec.has_bias else 0
    if spec.is_conv:
        weights = active_filters * spec.kernel_h * spec.kernel_w * active_in_channels
        return LayerCost(weights + bias, weights * spec.out_h * spec.out_w)
    weights = active_in_channels * active_filters
    return LayerCost(weights + bias, weights)


@dataclass(frozen=True)
class PruningPlan:
    per_layer: Mapping[str, PruneSelection]
    before: LayerCost
    after: LayerCost
    method: str | None = None
    p_by_layer: Mapping[str, float] = field(default_factory=dict)
    layer_before: Mapping[str, LayerCost] = field(default_factory=dict)
    layer_after: Mapping[str, LayerCost] = field(default_factory=dict)

    @property
    def params_reduction_pct(self) -> float:
        return reduction_pct(self.before.params, self.after.params)

    @property
    def macs_reduction_pct(self) -> float:
        return reduction_pct(self.before.macs, self.after.macs)


def reduction_pct(before: int, after: int) -> float:
    if before == 0:
        return 0.0
    return round(100.0 * (1.0 - after / before), 2)


def build_plan(manifest: ModelManifest, selections: Mapping[str, PruneSelection],
               method: str | None = None) -> PruningPlan:
    for name, sel in selections.items():
        if name not in manifest:
            raise UnknownLayer(f"no layer named {name!r}")
        spec = manifest[name]
        if not spec.is_conv:
            raise NotPrunable(f"layer not prunable: {name!r} is {spec.kind}")
        if sel.n != spec.n:
            raise InvalidCounts(f"{name}: selection covers {sel.n} filters, layer has {spec.n}")
        if not sel.keep:
            raise EmptyLayer(f"{name}: pruning ratio {sel.p} would remove every filter")

    before, after = LayerCost(), LayerCost()
    layer_before, layer_after = {}, {}
    for spec in manifest.layers:
        sel = selections.get(spec.name)
        active_filters = len(sel.keep) if sel is not None else spec.n
        active_in = spec.c
        pred = manifest.predecessor(spec.name)
        if pred is not None and pred.name in selections:
            lost = len(selections[pred.name].prune)
            if not spec.is_conv:
                lost *= pred.flatten_factor or 1
            active_in -= lost
        layer_before[spec.name] = layer_cost(spec, spec.c, spec.n)
        layer_after[spec.name] = layer_cost(spec, active_in, active_filters)
        before = before + layer_before[spec.name]
        after = after + layer_after[spec.name]
    return PruningPlan(
        per_layer=dict(selections),
        before=before,
        after=after,
        method=method,
        p_by_layer={name: sel.p for name, sel in selections.items()},
        layer_before=layer_before,
        layer_after=layer_after,
    )
