"""MiniOO syntax tree. Every node carries the source span of its first token."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..model import Visibility


@dataclass(frozen=True, slots=True)
class Span:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True, slots=True)
class Expr:
    span: Span


@dataclass(frozen=True, slots=True)
class NameExpr(Expr):
    name: str
    this_qualified: bool = False


@dataclass(frozen=True, slots=True)
class IntLit(Expr):
    value: int = 0


@dataclass(frozen=True, slots=True)
class StrLit(Expr):
    value: str = ""


@dataclass(frozen=True, slots=True)
class CallExpr(Expr):
    name: str = ""
    args: tuple[Expr, ...] = ()
    this_qualified: bool = False


@dataclass(frozen=True, slots=True)
class Stmt:
    span: Span


@dataclass(frozen=True, slots=True)
class LocalDecl(Stmt):
    type_name: str = ""
    name: str = ""
    init: Expr | None = None


@dataclass(frozen=True, slots=True)
class Assign(Stmt):
    target: NameExpr = None  # type: ignore[assignment]
    value: Expr = None  # type: ignore[assignment]


@dataclass(frozen=True, slots=True)
class CallStmt(Stmt):
    call: CallExpr = None  # type: ignore[assignment]


@dataclass(frozen=True, slots=True)
class Return(Stmt):
    value: Expr | None = None


@dataclass(frozen=True, slots=True)
class Param:
    span: Span
    type_name: str
    name: str


@dataclass(frozen=True, slots=True)
class FieldDecl:
    span: Span
    visibility: Visibility
    is_static: bool
    is_const: bool
    type_name: str
    name: str


@dataclass(frozen=True, slots=True)
class MethodDecl:
    span: Span
    visibility: Visibility
    is_static: bool
    return_type: str
    name: str
    params: tuple[Param, ...] = ()
    body: tuple[Stmt, ...] = ()

    def signature(self) -> str:
        params = ", ".join(f"{p.type_name} {p.name}" for p in self.params)
        return f"{self.name}({params})"


@dataclass(frozen=True, slots=True)
class ClassDecl:
    span: Span
    name: str
    parent: str | None = None
    fields: tuple[FieldDecl, ...] = ()
    methods: tuple[MethodDecl, ...] = ()


@dataclass(frozen=True, slots=True)
class Program:
    classes: tuple[ClassDecl, ...] = ()

    def find_class(self, name: str) -> ClassDecl | None:
        for cls in self.classes:
            if cls.name == name:
                return cls
        return None
