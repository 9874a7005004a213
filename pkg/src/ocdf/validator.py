"""Constraint checks over loaded models.

Each checkable rule has one code and one message template (see _RULES).
Findings are data, not failures: validate() always returns a list.
"""

from __future__ import annotations

from .diagnostics import Code, Diagnostic, ModelError, Severity, Subject
from .model import Feature, FeatureKind, FlowKind, OcdfClass, OcdfModel

# One entry per code: the rule the code enforces, worded once.
_RULES: dict[Code, str] = {
    Code.E_CF_ENDPOINT: "control flow may occur only between method instances",
    Code.E_DF_ENDPOINT: "data flow may occur only between two methods or a method and a data member",
    Code.E_CONST_WRITE: "only constructors may modify constant data members",
    Code.E_IFACE_VIS: "an interface method must have public visibility",
    Code.E_METHOD_VIS: "a non-interface method must have non-public visibility",
    Code.E_DANGLING_REF: "every flow endpoint must name a feature of the owning class",
    Code.E_DUP_ID: "feature ids and class names must be unique within their container",
    Code.E_BAD_ENUM: "kind and visibility tokens must come from the documented enumerations",
    Code.E_PARSE: "the document or source text must be well-formed",
    Code.E_NO_CLASS: "the requested class must be declared in the source",
    Code.E_RESOLVE: "a name must resolve to a parameter, local, or a field/method of the class or its ancestors",
    Code.E_INHERIT_CYCLE: "the parent chain of a class must be acyclic",
}


def explain(code: Code | str) -> str:
    """Human-readable rule text for a diagnostic code."""
    try:
        code = Code(code)
    except ValueError:
        raise ModelError([Diagnostic(
            code=Code.E_BAD_ENUM, severity=Severity.ERROR,
            message=f"unknown diagnostic code {code!r}")]) from None
    return _RULES[code]


def validate(model: OcdfModel) -> list[Diagnostic]:
    """Check every constraint; returns all violations sorted by
    (class name, code, subject ids). Empty list means the model conforms."""
    findings: list[Diagnostic] = []
    class_names: set[str] = set()
    for cls in model.classes:
        if cls.name in class_names:
            findings.append(_error(Code.E_DUP_ID, cls.name, (),
                                   f"duplicate class name '{cls.name}'"))
        class_names.add(cls.name)
        findings.extend(_validate_class(cls))
    findings.sort(key=Diagnostic.sort_key)
    return findings


def validate_class(cls: OcdfClass) -> list[Diagnostic]:
    """Validate a single class as if it were the whole model."""
    return validate(OcdfModel(classes=(cls,)))


def _validate_class(cls: OcdfClass) -> list[Diagnostic]:
    findings: list[Diagnostic] = []
    features: dict[str, Feature] = {}
    for feat in cls.features:
        if feat.id in features:
            findings.append(_error(Code.E_DUP_ID, cls.name, (feat.id,),
                                   f"duplicate feature id '{feat.id}'"))
        features[feat.id] = feat

        if feat.kind is FeatureKind.INTERFACE_METHOD and feat.visibility.value != "public":
            findings.append(_error(
                Code.E_IFACE_VIS, cls.name, (feat.id,),
                f"interface method '{feat.id}' has {feat.visibility} visibility; "
                "an interface method must be public"))
        elif feat.kind is FeatureKind.METHOD and feat.visibility.value == "public":
            findings.append(_error(
                Code.E_METHOD_VIS, cls.name, (feat.id,),
                f"method '{feat.id}' has public visibility; "
                "a non-interface method must be non-public"))

    for flow in cls.flows:
        source = features.get(flow.source)
        target = features.get(flow.target)
        dangling = [e for e, f in ((flow.source, source), (flow.target, target)) if f is None]
        if dangling:
            for endpoint in dangling:
                findings.append(_error(Code.E_DANGLING_REF, cls.name, (endpoint,),
                                       f"flow endpoint '{endpoint}' does not name a feature"))
            continue

        if flow.kind is FlowKind.CONTROL:
            if not (source.is_method_kind and target.is_method_kind):
                findings.append(_error(
                    Code.E_CF_ENDPOINT, cls.name, (flow.source, flow.target),
                    f"control flow {flow.source}->{flow.target} touches a data member; "
                    "control flow connects only method instances"))
        else:
            if not source.is_method_kind and not target.is_method_kind:
                findings.append(_error(
                    Code.E_DF_ENDPOINT, cls.name, (flow.source, flow.target),
                    f"data flow {flow.source}->{flow.target} connects two data members; "
                    "data flow connects two methods or a method and a data member"))
            elif (target.kind is FeatureKind.MEMBER and target.is_const
                  and source.is_method_kind and not source.is_constructor):
                # Fires only on writes (const member as target); reads are fine.
                findings.append(_error(
                    Code.E_CONST_WRITE, cls.name, (flow.source, flow.target),
                    f"non-constructor '{flow.source}' writes constant member '{flow.target}'; "
                    "only constructors may modify constant data members"))
    return findings


def _error(code: Code, class_name: str, ids: tuple[str, ...], message: str) -> Diagnostic:
    return Diagnostic(code=code, severity=Severity.ERROR, message=message,
                      subjects=(Subject(class_name, ids),))
