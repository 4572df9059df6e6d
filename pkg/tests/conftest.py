"""Shared test fixtures for graded-goldie tests."""

import os

import boto3
import pytest
from hypothesis import settings
from moto import mock_aws

from graded_goldie.bazhenov import BazhenovRing
from graded_goldie.config import resolve_parameters
from graded_goldie.group_tables import builtin_table
from graded_goldie.groups import InfiniteDihedralGroup
from graded_goldie.rings import (
    GradedMatrixRing,
    ScalarFieldRing,
    counterexample_ring,
    group_algebra,
    laurent_matrix_ring,
    nastasescu_ring,
)
from graded_goldie.scalars import CoefficientField

REPORT_BUCKET = "verify-reports"

settings.register_profile("ci", max_examples=50, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(autouse=True)
def aws_env():
    """Set dummy AWS credentials for moto."""
    os.environ["AWS_ACCESS_KEY_ID"] = "testing"
    os.environ["AWS_SECRET_ACCESS_KEY"] = "testing"
    os.environ["AWS_SECURITY_TOKEN"] = "testing"
    os.environ["AWS_SESSION_TOKEN"] = "testing"
    os.environ["AWS_DEFAULT_REGION"] = "ap-northeast-1"
    yield
    for key in [
        "AWS_ACCESS_KEY_ID",
        "AWS_SECRET_ACCESS_KEY",
        "AWS_SECURITY_TOKEN",
        "AWS_SESSION_TOKEN",
        "AWS_DEFAULT_REGION",
    ]:
        os.environ.pop(key, None)


@pytest.fixture
def s3_client():
    """Create a mocked S3 bucket for published reports."""
    with mock_aws():
        client = boto3.client("s3", region_name="ap-northeast-1")
        client.create_bucket(
            Bucket=REPORT_BUCKET,
            CreateBucketConfiguration={"LocationConstraint": "ap-northeast-1"},
        )
        yield client


@pytest.fixture
def qq():
    return CoefficientField()


@pytest.fixture
def d_infty():
    return InfiniteDihedralGroup()


@pytest.fixture
def s3_group():
    return builtin_table("S3")


@pytest.fixture
def z2():
    return builtin_table("Z2")


@pytest.fixture
def counterexample(d_infty):
    """M_2(k[t])(e, s) over D-infinity with deg t = r."""
    return counterexample_ring(d_infty, d_infty.symbol("s"), d_infty.symbol("r"))


@pytest.fixture
def laurent_matrices(d_infty):
    return laurent_matrix_ring(d_infty, d_infty.symbol("s"), d_infty.symbol("r"))


@pytest.fixture
def nastasescu():
    """k[x,y]/(xy) graded by the integers."""
    return nastasescu_ring()


@pytest.fixture
def bazhenov():
    return BazhenovRing()


@pytest.fixture
def z2_algebra(z2):
    return group_algebra(z2)


class _WrongShiftRing(GradedMatrixRing):
    """Grades entry (i, j) by g_i tau only, which breaks R_sigma R_tau in R_sigma.tau."""

    def entry_degree(self, i, j, tau):
        return self.group.multiply(self.shifts[i], tau)


@pytest.fixture
def wrong_shift_ring(z2):
    return _WrongShiftRing(ScalarFieldRing(z2), (z2.identity, z2.symbol("u")), kind="wrong-shift")


@pytest.fixture
def parameters():
    """Resolve suite parameters from keyword overrides, without a settings file."""

    def build(suite, **overrides):
        return resolve_parameters(suite, overrides, {"defaults": {}, "suites": {}})

    return build
