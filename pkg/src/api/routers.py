"""
API router definitions.

Endpoints (all under /api/v1):
- GET  /suites       → registered verification suites
- POST /jobs/verify  → accepts a verification job, returns 202 immediately
- POST /verify       → runs a suite inline and returns its certificate
- POST /gram         → Gram matrix report for TL_n
- POST /dims         → path-model dimension table of a principal graph
"""
import json
from datetime import datetime
from typing import List

from fastapi import APIRouter, BackgroundTasks, Depends, status

from src.algebra.graphs import (
    MIN_GROWTH_LEVELS,
    dims_table,
    embedability_check,
    graph_from_json,
    graph_from_name,
    growth_rate,
    path_dims,
)
from src.algebra.markov import gram_matrix
from src.algebra.scalars import make_domain
from src.api.dependencies import validate_api_key
from src.api.schemas import (
    DimsRequest,
    DimsResponse,
    GramRequest,
    JobAcceptedResponse,
    SuiteInfo,
    VerifyJobRequest,
    VerifyRequest,
)
from src.config import get_settings
from src.core.certificate import Certificate
from src.core.engine import run_suite, run_verify_job
from src.core.suite_registry import list_suites
from src.suites.base_suite import SuiteParams
from src.utils.serialization import GramReportModel, gram_report_to_model

router = APIRouter(dependencies=[Depends(validate_api_key)])


def generate_job_id(suite: str) -> str:
    """
    Timestamped job ID, e.g. verify_p-exchange_20260101_120000.
    """
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    return f"verify_{suite}_{timestamp}"


def _params(request: VerifyRequest) -> SuiteParams:
    return SuiteParams(max=request.max, F=request.F, samples=request.samples, seed=request.seed)


@router.get("/suites", response_model=List[SuiteInfo], summary="List verification suites")
async def get_suites():
    return [SuiteInfo(**entry) for entry in list_suites()]


@router.post(
    "/jobs/verify",
    status_code=status.HTTP_202_ACCEPTED,
    response_model=JobAcceptedResponse,
    summary="Submit a verification job",
    description=(
        "Accepts a verification job, generates a job ID, and runs the suite "
        "in the background. The certificate is posted to the webhook on completion."
    ),
)
async def create_verify_job(request: VerifyJobRequest, background_tasks: BackgroundTasks):
    job_id = generate_job_id(request.suite)
    params = _params(request)
    request_data = {
        "job_id": job_id,
        "suite": request.suite,
        "domain": request.domain,
        "params": {"max": params.max, "F": params.F, "samples": params.samples, "seed": params.seed},
        "webhook_url": str(request.webhook_url) if request.webhook_url else None,
        "job_metadata": request.job_metadata,
    }
    background_tasks.add_task(run_verify_job, request_data)
    return JobAcceptedResponse(status="processing", job_id=job_id)


@router.post("/verify", response_model=Certificate, summary="Run a suite and return its certificate")
def verify(request: VerifyRequest):
    return run_suite(request.suite, request.domain, _params(request))


@router.post("/gram", response_model=GramReportModel, summary="Gram matrix of the trace inner product")
def gram(request: GramRequest):
    domain = make_domain(request.domain or get_settings().tl_default_domain)
    return gram_report_to_model(gram_matrix(request.n, domain))


@router.post("/dims", response_model=DimsResponse, summary="Path-model dimensions of a principal graph")
def dims(request: DimsRequest):
    if request.adjacency is not None:
        graph = graph_from_json({"adjacency": request.adjacency, "star": request.star})
    else:
        graph = graph_from_name(request.graph or "A4")
    sequence = path_dims(graph, request.levels)
    table = dims_table(graph, request.levels)
    estimate = growth_rate(sequence).estimate if request.levels >= MIN_GROWTH_LEVELS else None
    verdict = None
    if request.hilbert_dim is not None:
        verdict = embedability_check(sequence, request.hilbert_dim).verdict
    return DimsResponse(
        graph=graph.name,
        rows=json.loads(table.to_json(orient="records")),
        growth_estimate=estimate,
        embedability=verdict,
    )
