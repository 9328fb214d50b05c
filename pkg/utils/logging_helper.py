"""Logging with correlation IDs, plus counters for the identity checks."""

import logging
import os
import uuid
from contextvars import ContextVar
from typing import Optional

try:
    from prometheus_client import Counter, start_http_server
    _PROM_AVAILABLE = True
except Exception:  # pragma: no cover - optional dependency
    _PROM_AVAILABLE = False

    class _DummyCounter:
        def labels(self, *a, **k) -> "_DummyCounter":
            return self

        def inc(self) -> None:
            pass

    def Counter(*a, **k):  # type: ignore
        return _DummyCounter()

    def start_http_server(*a, **k):  # type: ignore
        pass

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(correlation_id)s] %(levelname)s %(name)s: %(message)s"

correlation_id_var: ContextVar[Optional[str]] = ContextVar("correlation_id", default=None)


class CorrelationIdFilter(logging.Filter):
    """Stamp every record with the run's correlation ID (``-`` outside a run)."""

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "correlation_id"):
            record.correlation_id = correlation_id_var.get() or "-"
        return True


#: Outcomes of identity checks in this process
check_counts = {"passed": 0, "failed": 0}

identity_checks = Counter(
    "betti_identity_checks_total",
    "Identity and inequality checks by name and outcome",
    ["check", "outcome"],
)


def count_check(name: str, passed: bool) -> None:
    outcome = "passed" if passed else "failed"
    check_counts[outcome] += 1
    identity_checks.labels(check=name, outcome=outcome).inc()


def start_metrics_server(port: Optional[str] = None) -> bool:
    """Expose the counters over HTTP when ``PROMETHEUS_PORT`` (or ``port``) is set."""
    port = port or os.getenv("PROMETHEUS_PORT")
    if not port:
        return False
    try:
        start_http_server(int(port))
    except Exception as exc:  # pragma: no cover - environment may block
        logger.error(f"Failed to start metrics server on port {port}: {exc}")
        return False
    logger.info(f"Prometheus metrics server running on port {port}")
    return True


def setup_logging(level: int = logging.INFO) -> str:
    """Configure root logging for one run and return its correlation ID."""
    cid = uuid.uuid4().hex
    correlation_id_var.set(cid)

    root = logging.getLogger()
    root.setLevel(level)
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
    for handler in root.handlers:
        if not any(isinstance(f, CorrelationIdFilter) for f in handler.filters):
            handler.addFilter(CorrelationIdFilter())

    start_metrics_server()
    return cid
