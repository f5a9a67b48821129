"""
Suite engine.

Runs one verification suite end to end:
1. Resolve the suite class and its coefficient domain
2. Build the suite's independent tasks
3. Run the tasks in parallel (ThreadPoolExecutor)
4. Reassemble the case records in task order into a Certificate
5. For API jobs, post the certificate to the webhook (if configured)
"""
import asyncio
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Dict, List, Optional

from src.algebra.errors import PreconditionError
from src.algebra.scalars import make_domain
from src.config import get_settings
from src.core.certificate import CaseModel, Certificate, runtime_versions
from src.core.notifier import send_webhook
from src.core.suite_registry import SUITE_MAP, get_suite
from src.suites.base_suite import BaseSuite, CaseRecord, SuiteParams, SuiteTask


def resolve_domain_spec(suite_cls, domain_spec: Optional[str]) -> str:
    """Explicit spec, else the suite's own default, else settings.tl_default_domain."""
    if domain_spec:
        return domain_spec
    return suite_cls.default_domain or get_settings().tl_default_domain


def build_suite(
    name: str,
    domain_spec: Optional[str] = None,
    params: Optional[SuiteParams] = None,
    eps: Optional[float] = None,
) -> BaseSuite:
    """
    Instantiate a registered suite in its coefficient domain.

    Raises:
        PreconditionError: unknown suite name.
        DomainSpecError: malformed domain descriptor.
    """
    suite_cls = get_suite(name)
    if suite_cls is None:
        raise PreconditionError(f"unknown suite '{name}'; known suites: {', '.join(sorted(SUITE_MAP))}")
    domain = make_domain(resolve_domain_spec(suite_cls, domain_spec), eps=eps)
    return suite_cls(domain, params or SuiteParams(), logger=logging.getLogger(f"src.suites.{name}"))


def run_suite(
    name: str,
    domain_spec: Optional[str] = None,
    params: Optional[SuiteParams] = None,
    eps: Optional[float] = None,
    max_workers: Optional[int] = None,
) -> Certificate:
    """
    Run a suite and return its certificate.

    Tasks that raise are recorded as failed cases (with the error message);
    errors while building the tasks (bad parameters) propagate as TLError.
    """
    logger = logging.getLogger(__name__)
    start_time = time.time()
    suite = build_suite(name, domain_spec, params, eps)
    tasks = suite.build_tasks()
    logger.info(
        f"Suite '{name}' on {suite.domain.descriptor}: {len(tasks)} tasks, bound {suite.bound}"
    )

    workers = max_workers or get_settings().max_workers
    results: Dict[int, List[CaseRecord]] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_task = {executor.submit(_run_task, suite, task): task for task in tasks}
        for future in as_completed(future_to_task):
            task = future_to_task[future]
            results[task.index] = future.result()

    cases: List[CaseModel] = []
    for task in sorted(tasks, key=lambda t: t.index):
        for record in results[task.index]:
            cases.append(
                CaseModel(
                    index=len(cases),
                    task=task.label,
                    case=record.case,
                    passed=record.passed,
                    expected=record.expected,
                    got=record.got,
                    detail=record.detail,
                )
            )

    certificate = Certificate(
        suite=name,
        domain=suite.domain.descriptor,
        F=suite.params.F or suite.default_F,
        max=suite.bound,
        versions=runtime_versions(),
        wall_time_seconds=round(time.time() - start_time, 3),
        cases=cases,
    )
    logger.info(
        f"Suite '{name}' finished: {certificate.total} cases, {certificate.failed} failed "
        f"in {certificate.wall_time_seconds}s"
    )
    return certificate


def run_verify_job(request_data: dict) -> None:
    """
    Background entry point for API verification jobs.

    Args:
        request_data: Dictionary with keys:
            - job_id: str
            - suite: str
            - domain: Optional[str]
            - params: dict of SuiteParams fields
            - webhook_url: Optional[str]
            - job_metadata: Optional[dict]
    """
    logger = logging.getLogger(__name__)
    job_id = request_data.get("job_id", "unknown")
    try:
        certificate = run_suite(
            request_data["suite"],
            request_data.get("domain"),
            SuiteParams(**(request_data.get("params") or {})),
        )
    except Exception as e:
        logger.error(f"[{job_id}] Verification job crashed: {e}", exc_info=True)
        _send_webhook_if_needed(request_data, {"status": "failed", "error": str(e)})
        return
    logger.info(f"[{job_id}] Verification job completed (passed={certificate.passed}).")
    _send_webhook_if_needed(
        request_data, {"status": "completed", "certificate": certificate.model_dump(mode="json")}
    )


# ── Internal helpers ───────────────────────────────────────────────────────


def _run_task(suite: BaseSuite, task: SuiteTask) -> List[CaseRecord]:
    """Run one task; an exception becomes a single failed record."""
    start = time.time()
    try:
        records = task.run()
    except Exception as e:
        suite.logger.error(f"Task '{task.label}' of suite '{suite.name}' raised: {e}", exc_info=True)
        records = [CaseRecord(case=task.label, passed=False, detail=f"{type(e).__name__}: {e}")]
    failed = sum(not r.passed for r in records)
    suite.log_case(
        task.label,
        "passed" if failed == 0 else "failed",
        f"{len(records)} cases, {failed} failed, {int((time.time() - start) * 1000)} ms",
    )
    return records


def _send_webhook_if_needed(request_data: dict, body: Dict[str, Any]) -> None:
    """Send webhook notification if a webhook_url was configured."""
    webhook_url: Optional[str] = request_data.get("webhook_url")
    if not webhook_url:
        return

    payload = {
        "job_id": request_data.get("job_id", "unknown"),
        "job_metadata": request_data.get("job_metadata"),
        **body,
    }

    try:
        # BackgroundTasks run synchronously here, so drive the coroutine in a fresh loop
        loop = asyncio.new_event_loop()
        asyncio.set_event_loop(loop)
        loop.run_until_complete(send_webhook(webhook_url, payload))
        loop.close()
    except Exception as e:
        logging.getLogger(__name__).error(
            f"Failed to send webhook for job '{payload['job_id']}': {e}", exc_info=True
        )
