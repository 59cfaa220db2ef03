"""Pydantic request/response models for the HTTP service."""

from typing import Literal

from pydantic import BaseModel, Field, model_validator

Method = Literal["none", "pp", "bpp", "md", "dd"]


class GenerateSpec(BaseModel):
    kind: Literal["grid", "random"]
    width: int | None = None
    height: int | None = None
    nodes: int | None = None
    edges: int | None = None
    criteria: int = Field(default=2, ge=2, le=8)
    rho: float = Field(default=0.0, ge=-1.0, le=1.0)
    seed: int = 0
    low: float = 1.0
    high: float = 10.0


class CreateGraphRequest(BaseModel):
    """Provide exactly one of ``text`` (edge-list format) or ``generate``."""

    name: str | None = None
    text: str | None = None
    generate: GenerateSpec | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.text is None) == (self.generate is None):
            raise ValueError("provide exactly one of 'text' or 'generate'")
        return self


class GraphInfo(BaseModel):
    graph_id: str
    name: str | None
    nodes: int
    edges: int
    criteria: int


class QueryRequest(BaseModel):
    source: int = Field(ge=0)
    target: int = Field(ge=0)
    method: Method = "pp"
    include_paths: bool = False
    global_check: bool = True
    timeout_s: float | None = Field(default=None, gt=0)


class SkylineEntry(BaseModel):
    cost: list[float]
    nodes: list[int] | None = None


class QueryMetricsModel(BaseModel):
    visited_node_count: int
    bound_visited_nodes: int
    bound_relaxed_edges: int
    search_visited_nodes: int
    assembled_paths: int
    skyline_size: int
    bound_seconds: float
    search_seconds: float
    total_seconds: float


class QueryResponse(BaseModel):
    graph_id: str
    source: int
    target: int
    method: Method
    unreachable: bool
    skyline: list[SkylineEntry]
    metrics: QueryMetricsModel


class BenchRequest(BaseModel):
    """Provide explicit ``tasks`` or a ``random_tasks`` count with a seed."""

    tasks: list[tuple[int, int]] | None = None
    random_tasks: int | None = Field(default=None, ge=1)
    seed: int = 0
    methods: list[Method] = ["pp"]
    reps: int = Field(default=3, ge=1)
    timeout_s: float = Field(default=300.0, gt=0)
    workers: int = Field(default=1, ge=1)
    global_check: bool = True
    criteria_labels: list[str] | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.tasks is None) == (self.random_tasks is None):
            raise ValueError("provide exactly one of 'tasks' or 'random_tasks'")
        return self


class BenchRecordModel(BaseModel):
    task_id: int
    source: int
    target: int
    method: str
    d: int
    criteria: str
    reps: int
    skyline_size: int | None
    visited_nodes: int | None
    bound_visited_nodes: int | None
    search_visited_nodes: int | None
    assembled_paths: int | None
    runtime_us: float
    timeout: bool


class BenchResponse(BaseModel):
    graph_id: str
    records: list[BenchRecordModel]
    summary: dict
    task_retries: int = 0


class ValidateRequest(BaseModel):
    tasks: list[tuple[int, int]] | None = None
    sample: int = Field(default=10, ge=1)
    seed: int = 0
    node_limit: int = Field(default=14, ge=2)


class ValidateResponse(BaseModel):
    ok: bool
    tasks_checked: int
    mismatches: list[str]


class HealthResponse(BaseModel):
    status: str
    graphs: int
