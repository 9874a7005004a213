"""DOT output for class flow models.

Notation: members are plain boxes labeled "<vis> name : type"; methods are
rounded boxes labeled with their signature; interface methods additionally
get a light gray fill. Control flows are dashed arrows (labeled when a label
is set), data flows solid arrows from provider to consumer. Inherited
features get a dashed border and static features a "static " label prefix;
both are conventions of this renderer, not of the notation.

Output is deterministic: LF line endings, two-space indentation, nodes and
edges in model order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .analysis import AbstractionLevel, project
from .model import Feature, FeatureKind, OcdfClass, OcdfModel, Visibility


class RankDir(str, Enum):
    TOP_DOWN = "top_down"
    LEFT_RIGHT = "left_right"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class RenderOptions:
    level: AbstractionLevel = AbstractionLevel.L3
    show_inherited: bool = True
    rankdir: RankDir = RankDir.TOP_DOWN


_VIS_SYMBOL = {Visibility.PUBLIC: "+", Visibility.PROTECTED: "#", Visibility.PRIVATE: "-"}


def render_dot(cls: OcdfClass, opts: RenderOptions = RenderOptions()) -> str:
    """One class as a complete DOT document."""
    return render_model_dot(OcdfModel(classes=(cls,)), opts)


def render_model_dot(model: OcdfModel, opts: RenderOptions = RenderOptions()) -> str:
    """All classes of a model in one digraph, one cluster per class."""
    lines = ["digraph ocdf {"]
    lines.append(f"  rankdir={'LR' if opts.rankdir is RankDir.LEFT_RIGHT else 'TB'};")
    for cls in model.classes:
        lines.extend(_render_class(cls, opts))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render_class(cls: OcdfClass, opts: RenderOptions) -> list[str]:
    cls = project(cls, opts.level)
    features = list(cls.features)
    if not opts.show_inherited:
        kept = {f.id for f in features if not f.inherited}
        features = [f for f in features if not f.inherited]
        flows = [f for f in cls.flows if f.source in kept and f.target in kept]
    else:
        flows = list(cls.flows)

    ids = _node_ids(features)
    lines = [f"  subgraph cluster_{_sanitize(cls.name)} {{",
             f'    label="{_escape(cls.name)}";']
    for feat in features:
        attrs = [f'label="{_escape(_label(feat))}"', "shape=box"]
        style = _style(feat)
        if style:
            attrs.append(f'style="{style}"')
        if feat.kind is FeatureKind.INTERFACE_METHOD:
            attrs.append("fillcolor=lightgray")
        lines.append(f"    {ids[feat.id]} [{', '.join(attrs)}];")
    for flow in flows:
        attrs = []
        if flow.kind.value == "control":
            attrs.append("style=dashed")
        if flow.label is not None:
            attrs.append(f'label="{_escape(flow.label)}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"    {ids[flow.source]} -> {ids[flow.target]}{suffix};")
    lines.append("  }")
    return lines


def _label(feat: Feature) -> str:
    symbol = _VIS_SYMBOL[feat.visibility]
    static = "static " if feat.is_static else ""
    if feat.kind is FeatureKind.MEMBER:
        typed = f" : {feat.decl}" if feat.decl else ""
        return f"{symbol} {static}{feat.name}{typed}"
    signature = feat.decl or f"{feat.name}()"
    return f"{symbol} {static}{signature}"


def _style(feat: Feature) -> str:
    parts = []
    if feat.kind is not FeatureKind.MEMBER:
        parts.append("rounded")
    if feat.kind is FeatureKind.INTERFACE_METHOD:
        parts.append("filled")
    if feat.inherited:
        parts.append("dashed")
    return ",".join(parts)


def _sanitize(identifier: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_]", "_", identifier)
    if not cleaned or cleaned[0].isdigit():
        cleaned = f"f_{cleaned}"
    return cleaned


def _node_ids(features: list[Feature]) -> dict[str, str]:
    """Sanitized, collision-free DOT ids keyed by feature id."""
    ids: dict[str, str] = {}
    used: set[str] = set()
    for feat in features:
        candidate = _sanitize(feat.id)
        suffix = 2
        while candidate in used:
            candidate = f"{_sanitize(feat.id)}_{suffix}"
            suffix += 1
        ids[feat.id] = candidate
        used.add(candidate)
    return ids


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')
