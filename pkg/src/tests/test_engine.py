import pytest

from src.algebra.errors import DomainSpecError, PreconditionError
from src.core import engine
from src.core.certificate import AUDIT_FIELDS, build_audit_csv
from src.core.engine import build_suite, resolve_domain_spec, run_suite, run_verify_job
from src.core.suite_registry import SUITE_MAP, get_suite, list_suites
from src.suites.base_suite import CaseRecord, SuiteParams, SuiteTask

SMALL_BOUNDS = {
    "relations": 3,
    "word-oracle": 3,
    "markov": 2,
    "run-merge": 3,
    "p-exchange": 2,
    "f-projection": 2,
    "conjugate-equations": 3,
    "adjointness": 2,
    "dims": 3,
    "quasitensor": 2,
    "spectral": 2,
    "traciality": 1,
    "concrete-rep": 3,
}


def test_every_suite_has_a_small_bound():
    assert set(SMALL_BOUNDS) == set(SUITE_MAP)
    assert [s["name"] for s in list_suites()] == list(SUITE_MAP)


@pytest.mark.parametrize("name", sorted(SMALL_BOUNDS))
def test_small_suite_runs_pass(name):
    certificate = run_suite(name, params=SuiteParams(max=SMALL_BOUNDS[name], samples=10, seed=1), max_workers=2)
    assert certificate.suite == name
    assert certificate.max == SMALL_BOUNDS[name]
    assert certificate.total > 0
    assert certificate.passed, [c.case for c in certificate.failures()]
    assert [c.index for c in certificate.cases] == list(range(certificate.total))


def test_certificates_are_deterministic():
    params = SuiteParams(max=2, samples=10, seed=7)
    first = run_suite("markov", params=params).model_dump(exclude={"wall_time_seconds"})
    second = run_suite("markov", params=params).model_dump(exclude={"wall_time_seconds"})
    assert first == second


def test_domain_resolution():
    assert resolve_domain_spec(get_suite("traciality"), None) == "index=2"
    assert resolve_domain_spec(get_suite("traciality"), "index=3") == "index=3"
    assert resolve_domain_spec(get_suite("relations"), None) == "symbolic"


def test_unknown_suite_and_bad_domain():
    with pytest.raises(PreconditionError):
        build_suite("no-such-suite")
    with pytest.raises(DomainSpecError):
        build_suite("relations", "index=banana")


def test_traciality_rejects_mismatched_F():
    with pytest.raises(PreconditionError):
        run_suite("traciality", "symbolic", SuiteParams(max=1))


def test_audit_csv():
    certificate = run_suite("f-projection", params=SuiteParams(max=1))
    lines = build_audit_csv(certificate).splitlines()
    assert lines[0] == ",".join(AUDIT_FIELDS)
    assert len(lines) == certificate.total + 1


def test_raising_task_becomes_failed_record():
    suite = build_suite("relations", params=SuiteParams(max=2))

    def boom():
        raise ValueError("exploded")

    records = engine._run_task(suite, SuiteTask(0, "broken", boom))
    assert records == [CaseRecord(case="broken", passed=False, detail="ValueError: exploded")]


def test_verify_job_posts_certificate(monkeypatch):
    sent = []

    async def fake_send(url, payload, logger=None):
        sent.append((url, payload))
        return True

    monkeypatch.setattr(engine, "send_webhook", fake_send)
    run_verify_job({
        "job_id": "job-1",
        "suite": "f-projection",
        "params": {"max": 1},
        "webhook_url": "http://receiver.test/hook",
        "job_metadata": {"ticket": 7},
    })
    (url, payload), = sent
    assert url == "http://receiver.test/hook"
    assert payload["job_id"] == "job-1"
    assert payload["job_metadata"] == {"ticket": 7}
    assert payload["status"] == "completed"
    assert payload["certificate"]["passed"] is True


def test_verify_job_reports_crash(monkeypatch):
    sent = []

    async def fake_send(url, payload, logger=None):
        sent.append(payload)
        return True

    monkeypatch.setattr(engine, "send_webhook", fake_send)
    run_verify_job({"job_id": "job-2", "suite": "no-such-suite", "webhook_url": "http://receiver.test/hook"})
    assert sent[0]["status"] == "failed"
    assert "no-such-suite" in sent[0]["error"]


def test_verify_job_without_webhook_is_silent(monkeypatch):
    monkeypatch.setattr(engine, "send_webhook", pytest.fail)
    run_verify_job({"job_id": "job-3", "suite": "f-projection", "params": {"max": 1}})


def test_webhook_retries_server_errors(monkeypatch):
    import asyncio

    import httpx

    from src.core import notifier

    statuses = iter([503, 200])
    seen = []

    def handler(request):
        seen.append(request.url.path)
        return httpx.Response(next(statuses))

    real_client = httpx.AsyncClient
    monkeypatch.setattr(notifier.httpx, "AsyncClient",
                        lambda **kw: real_client(transport=httpx.MockTransport(handler), **kw))
    monkeypatch.setattr(notifier, "RETRY_BACKOFF_SECONDS", 0.0)
    delivered = asyncio.run(notifier.send_webhook("http://receiver.test/hook", {"job_id": "j", "status": "completed"}))
    assert delivered
    assert seen == ["/hook", "/hook"]


def test_webhook_client_errors_are_final(monkeypatch):
    import asyncio

    import httpx

    from src.core import notifier

    calls = []

    def handler(request):
        calls.append(1)
        return httpx.Response(404)

    real_client = httpx.AsyncClient
    monkeypatch.setattr(notifier.httpx, "AsyncClient",
                        lambda **kw: real_client(transport=httpx.MockTransport(handler), **kw))
    assert not asyncio.run(notifier.send_webhook("http://receiver.test/hook", {"job_id": "j"}))
    assert calls == [1]


def test_markov_suite_covers_every_basis_pair():
    # basis sizes 1, 2, 5: pair checks n², tr∘E and e x e per element, E(1) for n ≥ 2
    certificate = run_suite("markov", params=SuiteParams(max=3))
    assert certificate.total == 3 + 14 + 65
    assert certificate.passed
    cases = {c.case for c in certificate.cases}
    assert "n=3 tr(xy)=tr(yx) D#4,D#3" in cases
    assert "n=3 E(x e2 y) D#1,D#0" in cases
