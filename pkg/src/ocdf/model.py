"""Core data model: classes, features, flows, and the canonical JSON form.

A model is a directed graph per class: features (members, methods, interface
methods) are the nodes, control/data flows are the edges. Instances are
immutable after construction and safe to share across threads.

Structural rules (unique ids, resolvable flow endpoints, known enum tokens)
are enforced here on build and load. Constraint rules (endpoint kinds,
visibility, const writes) are representable on purpose and judged by the
validator, so that non-conforming documents can still be loaded and checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .diagnostics import Code, Diagnostic, ModelError, Severity, Subject

FORMAT_VERSION = 1


class FeatureKind(str, Enum):
    MEMBER = "member"
    METHOD = "method"
    INTERFACE_METHOD = "interface_method"

    def __str__(self) -> str:
        return self.value


class FlowKind(str, Enum):
    CONTROL = "control"
    DATA = "data"

    def __str__(self) -> str:
        return self.value


class Visibility(str, Enum):
    PUBLIC = "public"
    PROTECTED = "protected"
    PRIVATE = "private"

    def __str__(self) -> str:
        return self.value


METHOD_KINDS = frozenset({FeatureKind.METHOD, FeatureKind.INTERFACE_METHOD})


@dataclass(frozen=True, slots=True)
class Feature:
    """A node of the class graph.

    ``decl`` holds the type annotation for members and the signature text for
    methods. ``is_const`` is meaningful only for members, ``is_constructor``
    only for method kinds; the other flag is carried but ignored.
    """

    id: str
    kind: FeatureKind
    name: str
    decl: str = ""
    visibility: Visibility = Visibility.PRIVATE
    is_static: bool = False
    is_const: bool = False
    is_constructor: bool = False
    inherited: bool = False

    @property
    def is_method_kind(self) -> bool:
        return self.kind in METHOD_KINDS


@dataclass(frozen=True, slots=True)
class Flow:
    """A directed edge: control is caller->callee, data is provider->consumer."""

    kind: FlowKind
    source: str
    target: str
    label: str | None = None

    def key(self) -> tuple[FlowKind, str, str]:
        """Identity triple; flows within a class have set semantics over it."""
        return (self.kind, self.source, self.target)


@dataclass(frozen=True, slots=True)
class OcdfClass:
    name: str
    features: tuple[Feature, ...] = ()
    flows: tuple[Flow, ...] = ()

    def feature_map(self) -> dict[str, Feature]:
        return {f.id: f for f in self.features}


@dataclass(frozen=True, slots=True)
class OcdfModel:
    classes: tuple[OcdfClass, ...] = ()
    format_version: int = FORMAT_VERSION


def build_class(name: str, features: Iterable[Feature], flows: Iterable[Flow]) -> OcdfClass:
    """Assemble a class, checking structural rules and deduplicating flows.

    Raises ModelError with E_DUP_ID for repeated feature ids and
    E_DANGLING_REF for flows naming unknown features. All findings are
    collected before raising.
    """
    features = tuple(features)
    problems: list[Diagnostic] = []

    seen: set[str] = set()
    for feat in features:
        if feat.id in seen:
            problems.append(_structural(Code.E_DUP_ID, name, (feat.id,),
                                        f"duplicate feature id '{feat.id}'"))
        seen.add(feat.id)

    kept: list[Flow] = []
    keys: set[tuple[FlowKind, str, str]] = set()
    for flow in flows:
        for endpoint in (flow.source, flow.target):
            if endpoint not in seen:
                problems.append(_structural(Code.E_DANGLING_REF, name, (endpoint,),
                                            f"flow endpoint '{endpoint}' does not name a feature"))
        if flow.key() not in keys:
            keys.add(flow.key())
            kept.append(flow)

    if problems:
        raise ModelError(problems)
    return OcdfClass(name=name, features=features, flows=tuple(kept))


def build_model(classes: Iterable[OcdfClass]) -> OcdfModel:
    """Wrap classes into a model, rejecting duplicate class names."""
    classes = tuple(classes)
    problems = []
    seen: set[str] = set()
    for cls in classes:
        if cls.name in seen:
            problems.append(_structural(Code.E_DUP_ID, cls.name, (),
                                        f"duplicate class name '{cls.name}'"))
        seen.add(cls.name)
    if problems:
        raise ModelError(problems)
    return OcdfModel(classes=classes)


# Field order below is the canonical document field order; do not reorder.

def _feature_doc(f: Feature) -> dict:
    return {
        "id": f.id,
        "kind": f.kind.value,
        "name": f.name,
        "decl": f.decl,
        "visibility": f.visibility.value,
        "is_static": f.is_static,
        "is_const": f.is_const,
        "is_constructor": f.is_constructor,
        "inherited": f.inherited,
    }


def _flow_doc(f: Flow) -> dict:
    return {
        "kind": f.kind.value,
        "source": f.source,
        "target": f.target,
        "label": f.label,
    }


def serialize(model: OcdfModel) -> bytes:
    """Canonical UTF-8 JSON bytes. Identical models produce identical bytes;
    feature/flow order is preserved as given."""
    doc = {
        "format_version": model.format_version,
        "classes": [
            {
                "name": cls.name,
                "features": [_feature_doc(f) for f in cls.features],
                "flows": [_flow_doc(f) for f in cls.flows],
            }
            for cls in model.classes
        ],
    }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def deserialize(data: bytes | str) -> OcdfModel:
    """Load a model document, checking every structural rule.

    Raises ModelError carrying E_PARSE (malformed document), E_BAD_ENUM
    (unknown kind/visibility token), E_DUP_ID, or E_DANGLING_REF.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ModelError([_parse_problem(f"not valid UTF-8: {exc}")]) from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ModelError([_parse_problem(f"malformed JSON: {exc}")]) from exc

    loader = _Loader()
    model = loader.model(doc)
    if loader.problems:
        raise ModelError(loader.problems)
    return model


def _structural(code: Code, class_name: str, ids: tuple[str, ...], message: str) -> Diagnostic:
    return Diagnostic(code=code, severity=Severity.ERROR, message=message,
                      subjects=(Subject(class_name, ids),))


def _parse_problem(message: str, class_name: str = "") -> Diagnostic:
    subjects = (Subject(class_name),) if class_name else ()
    return Diagnostic(code=Code.E_PARSE, severity=Severity.ERROR,
                      message=message, subjects=subjects)


class _Loader:
    """Document-to-model lowering that collects problems instead of stopping
    at the first one, so a load failure reports everything wrong at once."""

    def __init__(self) -> None:
        self.problems: list[Diagnostic] = []

    def model(self, doc: object) -> OcdfModel:
        if not isinstance(doc, dict):
            self.problems.append(_parse_problem("document root must be an object"))
            return OcdfModel()
        version = doc.get("format_version")
        if version != FORMAT_VERSION:
            self.problems.append(_parse_problem(
                f"unsupported format_version {version!r} (expected {FORMAT_VERSION})"))
        raw_classes = doc.get("classes")
        if not isinstance(raw_classes, list):
            self.problems.append(_parse_problem("'classes' must be a list"))
            return OcdfModel()
        classes = [self.clazz(c, i) for i, c in enumerate(raw_classes)]
        seen: set[str] = set()
        for cls in classes:
            if cls.name in seen:
                self.problems.append(_structural(Code.E_DUP_ID, cls.name, (),
                                                 f"duplicate class name '{cls.name}'"))
            seen.add(cls.name)
        return OcdfModel(classes=tuple(classes))

    def clazz(self, raw: object, index: int) -> OcdfClass:
        if not isinstance(raw, dict):
            self.problems.append(_parse_problem(f"classes[{index}] must be an object"))
            return OcdfClass(name=f"<classes[{index}]>")
        name = raw.get("name")
        if not isinstance(name, str) or not name:
            self.problems.append(_parse_problem(f"classes[{index}] is missing a name"))
            name = f"<classes[{index}]>"

        features = [self.feature(f, name, i)
                    for i, f in enumerate(self._list(raw, "features", name))]
        ids: set[str] = set()
        for feat in features:
            if feat.id in ids:
                self.problems.append(_structural(Code.E_DUP_ID, name, (feat.id,),
                                                 f"duplicate feature id '{feat.id}'"))
            ids.add(feat.id)

        # flows have set semantics; duplicates collapse on load as on build
        flows: list[Flow] = []
        keys: set[tuple[FlowKind, str, str]] = set()
        for i, f in enumerate(self._list(raw, "flows", name)):
            flow = self.flow(f, name, i, ids)
            if flow.key() not in keys:
                keys.add(flow.key())
                flows.append(flow)
        return OcdfClass(name=name, features=tuple(features), flows=tuple(flows))

    def _list(self, raw: dict, key: str, class_name: str) -> list:
        value = raw.get(key, [])
        if not isinstance(value, list):
            self.problems.append(_parse_problem(f"'{key}' must be a list", class_name))
            return []
        return value

    def feature(self, raw: object, class_name: str, index: int) -> Feature:
        if not isinstance(raw, dict):
            self.problems.append(_parse_problem(f"features[{index}] must be an object", class_name))
            return Feature(id=f"<features[{index}]>", kind=FeatureKind.MEMBER, name="")
        fid = self._req_str(raw, "id", class_name, f"features[{index}]")
        name = self._req_str(raw, "name", class_name, f"features[{index}]")
        decl = self._req_str(raw, "decl", class_name, f"features[{index}]")
        kind = self._enum(raw, "kind", FeatureKind, class_name, fid)
        visibility = self._enum(raw, "visibility", Visibility, class_name, fid)
        return Feature(
            id=fid or f"<features[{index}]>",
            kind=kind or FeatureKind.MEMBER,
            name=name,
            decl=decl,
            visibility=visibility or Visibility.PRIVATE,
            is_static=self._flag(raw, "is_static", class_name, fid),
            is_const=self._flag(raw, "is_const", class_name, fid),
            is_constructor=self._flag(raw, "is_constructor", class_name, fid),
            inherited=self._flag(raw, "inherited", class_name, fid),
        )

    def flow(self, raw: object, class_name: str, index: int, ids: set[str]) -> Flow:
        if not isinstance(raw, dict):
            self.problems.append(_parse_problem(f"flows[{index}] must be an object", class_name))
            return Flow(kind=FlowKind.DATA, source="", target="")
        kind = self._enum(raw, "kind", FlowKind, class_name, f"flows[{index}]")
        source = self._req_str(raw, "source", class_name, f"flows[{index}]")
        target = self._req_str(raw, "target", class_name, f"flows[{index}]")
        label = raw.get("label")
        if label is not None and not isinstance(label, str):
            self.problems.append(_parse_problem(f"flows[{index}] label must be a string or null",
                                                class_name))
            label = None
        for endpoint in (source, target):
            if endpoint and endpoint not in ids:
                self.problems.append(_structural(
                    Code.E_DANGLING_REF, class_name, (endpoint,),
                    f"flow endpoint '{endpoint}' does not name a feature"))
        return Flow(kind=kind or FlowKind.DATA, source=source, target=target, label=label)

    def _req_str(self, raw: dict, key: str, class_name: str, where: str) -> str:
        value = raw.get(key)
        if not isinstance(value, str):
            self.problems.append(_parse_problem(f"{where} is missing string field '{key}'",
                                                class_name))
            return ""
        return value

    def _flag(self, raw: dict, key: str, class_name: str, where: str) -> bool:
        value = raw.get(key, False)
        if not isinstance(value, bool):
            self.problems.append(_parse_problem(f"{where}: '{key}' must be a boolean", class_name))
            return False
        return value

    def _enum(self, raw: dict, key: str, enum_type: type, class_name: str, where: str):
        value = raw.get(key)
        try:
            return enum_type(value)
        except ValueError:
            self.problems.append(Diagnostic(
                code=Code.E_BAD_ENUM, severity=Severity.ERROR,
                message=f"{where}: unknown {key} token {value!r}",
                subjects=(Subject(class_name, (where,)),)))
            return None
