from enum import Enum
from typing import Any, Dict, List, Optional

import sympy
from pydantic import BaseModel, Field, field_validator


class ProjectConfig(BaseModel):
    factorial_budget: Optional[int] = None
    enumeration_guard: Optional[int] = None
    prop31_guard: Optional[int] = None
    automorphism_guard: Optional[int] = None
    dedup: Optional[bool] = None
    workers: Optional[int] = None
    format: Optional[str] = None
    quiet: Optional[bool] = None
    log_runs: Optional[bool] = None

    @field_validator("factorial_budget", "enumeration_guard", "prop31_guard", "automorphism_guard", "workers")
    @classmethod
    def must_be_positive(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("Must be a positive integer")
        return v

    @field_validator("format")
    @classmethod
    def must_be_known_format(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and v not in ("text", "json"):
            raise ValueError("Must be 'text' or 'json'")
        return v


class StructuralPredicates(BaseModel):
    indegree: Dict[str, int]
    outdegree: Dict[str, int]
    sinks: List[str]
    rigid_sources: List[str]
    loops: List[str]
    isolated: List[str]
    connected: bool
    has_path_of_length_two: bool


class FMatrixReport(BaseModel):
    edges: List[str]
    diagonal: List[int]
    scalar: bool

    def matrix(self) -> sympy.Matrix:
        if not self.diagonal:
            return sympy.zeros(0, 0)
        return sympy.diag(*self.diagonal)


class Family(str, Enum):
    LN = "Ln"
    DISJOINT_LOOPS = "DisjointLoops"
    C2 = "C2"
    CLASS_S = "ClassS"
    CLASS_I1_SON = "ClassI1_Son"
    CLASS_I1_OTHER = "ClassI1_Other"
    NONE = "None"


class GroupKind(str, Enum):
    UN_PLUS = "UnPlus"
    HN_INF_PLUS = "HnInfPlus"
    SHN_INF_PLUS = "SHnInfPlus"
    H2_INF_PLUS = "H2InfPlus"
    NOT_MAXIMAL = "NotMaximal"

    def label(self, n: int) -> str:
        if self is GroupKind.UN_PLUS:
            return f"U+({n})"
        if self is GroupKind.HN_INF_PLUS:
            return f"Hinf+({n})"
        if self is GroupKind.SHN_INF_PLUS:
            return f"SHinf+({n})"
        if self is GroupKind.H2_INF_PLUS:
            return "Hinf+(2)"
        return "NotMaximal"


class Obstruction(BaseModel):
    kind: str
    lemma: str  # EL1, EL2, EL3, EP1 or EP2
    vertices: List[str] = Field(default_factory=list)
    edges: List[str] = Field(default_factory=list)
    detail: str = ""


class AutFWitness(BaseModel):
    case: str
    e: str
    g: str
    vanishing: str
    vanishing_confirmed: bool
    nonvanishing: str
    nonvanishing_confirmed: bool


class AutFReport(BaseModel):
    f: FMatrixReport
    scalar: bool
    possible: bool
    witness: Optional[AutFWitness] = None
    scope: str = "identical"


class ClassificationVerdict(BaseModel):
    n: int
    family: Family
    group_kind: GroupKind
    group: str
    connected: bool
    f_matrix: FMatrixReport
    obstruction: Optional[Obstruction] = None
    aut_f_feasible: bool
    coincidence: Optional[str] = None

    def to_payload(self, aut_f: Optional[AutFReport] = None) -> Dict[str, Any]:
        """Stable JSON shape shared by the CLI and the run log."""
        witnesses: List[Dict[str, Any]] = []
        if aut_f is not None and aut_f.witness is not None:
            witnesses.append(aut_f.witness.model_dump())
        return {
            "family": self.family.value,
            "group": self.group,
            "n": self.n,
            "connected": self.connected,
            "f_diag": list(self.f_matrix.diagonal),
            "f_scalar": self.f_matrix.scalar,
            "obstruction": self.obstruction.kind if self.obstruction else None,
            "obstruction_witness": self.obstruction.model_dump() if self.obstruction else None,
            "autf_possible": self.aut_f_feasible,
            "witnesses": witnesses,
            "coincidence": self.coincidence,
        }


class PermutationFailure(BaseModel):
    check: str
    check_index: int
    vertices: List[str] = Field(default_factory=list)
    edges: List[str] = Field(default_factory=list)
    left: Optional[str] = None
    right: Optional[str] = None
    tau_expected: Optional[str] = None
    tau_actual: Optional[str] = None
    detail: str = ""


class PermutationCertificate(BaseModel):
    permutation: Dict[str, str]
    cycles: str
    admissible: bool
    failure: Optional[PermutationFailure] = None


class BruteForceResult(BaseModel):
    maximal: bool
    checked: int
    failures: List[PermutationCertificate] = Field(default_factory=list)


class Discrepancy(BaseModel):
    graph: str
    kind: str
    detail: str


class TheoremReport(BaseModel):
    v_max: int
    e_max: int
    graphs: int = 0
    classes: int = 0
    family_counts: Dict[str, int] = Field(default_factory=dict)
    class_family_counts: Dict[str, int] = Field(default_factory=dict)
    discrepancies: List[Discrepancy] = Field(default_factory=list)
    budget: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.discrepancies


class Prop31Report(BaseModel):
    n: int
    digraphs: int
    full_symmetry: int
    full_symmetry_shapes: List[str] = Field(default_factory=list)
    discrepancies: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.discrepancies


class CommandResult(BaseModel):
    exit_code: int = 0
    output: str = ""
    summary: str = ""
