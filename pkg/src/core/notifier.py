"""
Webhook delivery for finished verification jobs.

The payload carries the job id, the caller's metadata, the status and either
the certificate or the error text.  Delivery is retried on transport errors
and 5xx answers; a 4xx answer is final.
"""
import asyncio
import logging
from typing import Any, Dict, Optional

import httpx

from src.config import get_settings

WEBHOOK_TIMEOUT_SECONDS = 30.0
RETRY_BACKOFF_SECONDS = 1.0


def _summary(payload: Dict[str, Any]) -> str:
    certificate = payload.get("certificate")
    if not certificate:
        return f"status={payload.get('status')}"
    return (
        f"status={payload.get('status')} suite={certificate.get('suite')} "
        f"cases={certificate.get('total')} failed={certificate.get('failed')}"
    )


async def send_webhook(
    webhook_url: str,
    payload: Dict[str, Any],
    logger: Optional[logging.Logger] = None,
) -> bool:
    """
    POST a job result to the webhook URL.

    Args:
        webhook_url: receiver URL
        payload: job_id, job_metadata, status and certificate (or error)
        logger: Optional logger instance

    Returns:
        True once the receiver answers 2xx, False when every attempt failed.
    """
    _logger = logger or logging.getLogger(__name__)
    attempts = max(1, get_settings().webhook_attempts)
    job_id = payload.get("job_id", "unknown")

    async with httpx.AsyncClient(timeout=WEBHOOK_TIMEOUT_SECONDS) as client:
        for attempt in range(1, attempts + 1):
            try:
                response = await client.post(webhook_url, json=payload)
            except (httpx.TimeoutException, httpx.RequestError) as e:
                _logger.warning(f"[{job_id}] webhook attempt {attempt}/{attempts} to {webhook_url} failed: {e}")
            else:
                if response.is_success:
                    _logger.info(f"[{job_id}] webhook delivered to {webhook_url} ({_summary(payload)})")
                    return True
                _logger.warning(
                    f"[{job_id}] webhook attempt {attempt}/{attempts} got HTTP {response.status_code} from {webhook_url}"
                )
                if response.status_code < 500:
                    return False
            if attempt < attempts:
                await asyncio.sleep(RETRY_BACKOFF_SECONDS * attempt)

    _logger.error(f"[{job_id}] webhook to {webhook_url} gave up after {attempts} attempts")
    return False
