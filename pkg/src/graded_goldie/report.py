"""Verification reports: check records, canonical JSON and text rendering, publication."""

import json
import logging
import sys
from dataclasses import dataclass, field
from enum import StrEnum

import boto3
from botocore.config import Config

logger = logging.getLogger(__name__)

# Enable standard retry mode with exponential backoff for throttling
_BOTO_CONFIG = Config(
    retries={"mode": "standard", "max_attempts": 5},
)

S3_PREFIX = "s3://"


class Status(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    EXHAUSTED = "exhausted"


@dataclass
class Check:
    name: str
    status: Status
    witness: object = None
    elapsed_ms: int = 0

    def to_dict(self):
        return {"name": self.name, "status": str(self.status), "witness": self.witness, "elapsed_ms": self.elapsed_ms}


@dataclass
class Report:
    suite: str
    instance: str
    parameters: dict
    checks: list = field(default_factory=list)

    @property
    def summary(self):
        counts = {str(s): 0 for s in Status}
        for check in self.checks:
            counts[str(check.status)] += 1
        return counts

    @property
    def exit_code(self):
        """0 all pass, 1 any fail, 2 any exhausted without a fail."""
        summary = self.summary
        if summary["fail"]:
            return 1
        if summary["exhausted"]:
            return 2
        return 0

    def to_dict(self):
        return {
            "suite": self.suite,
            "instance": self.instance,
            "parameters": self.parameters,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary,
        }


def to_json(report):
    """Canonical JSON: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _witness_summary(witness, limit=120):
    if witness is None:
        return "-"
    text = json.dumps(witness, sort_keys=True, ensure_ascii=False)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def to_text(report):
    lines = [f"suite {report.suite} on {report.instance}"]
    for check in report.checks:
        lines.append(f"[{check.status}] {check.name}: {_witness_summary(check.witness)}")
    summary = report.summary
    lines.append(f"pass={summary['pass']} fail={summary['fail']} exhausted={summary['exhausted']}")
    return "\n".join(lines) + "\n"


def render(report, fmt="json"):
    if fmt == "json":
        return to_json(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown report format '{fmt}'")


def _get_s3_client():
    """Get S3 client with retry configuration."""
    return boto3.client("s3", config=_BOTO_CONFIG)


def parse_s3_uri(uri):
    """Split ``s3://bucket/key`` into (bucket, key).

    Raises:
        ValueError: If the bucket or key is missing.
    """
    bucket, _, key = uri[len(S3_PREFIX) :].partition("/")
    if not bucket or not key:
        raise ValueError(f"S3 destination needs a bucket and a key: {uri}")
    return bucket, key


def publish_report(report, destination=None, fmt="json", client=None, stream=None):
    """Write a rendered report to stdout, a local file or S3.

    Args:
        report: Report to publish.
        destination: None or "-" for stdout, ``s3://bucket/key``, or a file path.
        fmt: "json" or "text".
        client: Optional boto3 S3 client (for testing).
        stream: Optional text stream replacing stdout.

    Returns:
        str: The rendered report.
    """
    body = render(report, fmt)
    if destination in (None, "-"):
        (stream or sys.stdout).write(body)
        return body
    if destination.startswith(S3_PREFIX):
        bucket, key = parse_s3_uri(destination)
        client = client or _get_s3_client()
        content_type = "application/json" if fmt == "json" else "text/plain"
        client.put_object(Bucket=bucket, Key=key, Body=body.encode("utf-8"), ContentType=content_type)
    else:
        with open(destination, "w", encoding="utf-8") as f:
            f.write(body)
    logger.info("Report for suite %s written to %s", report.suite, destination)
    return body
