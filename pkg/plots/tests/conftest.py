import pytest

from sample_csv import DECRYPT_ROWS, VERIFY_ROWS, write_csv


@pytest.fixture
def verify_csv(tmp_path):
    return write_csv(tmp_path / "verify.csv", VERIFY_ROWS)


@pytest.fixture
def second_csv(tmp_path):
    shifted = [row.replace("2.5", "2.9", 1) for row in VERIFY_ROWS]
    return write_csv(tmp_path / "tuned.csv", shifted)


@pytest.fixture
def mixed_csv(tmp_path):
    return write_csv(tmp_path / "mixed.csv", VERIFY_ROWS + DECRYPT_ROWS)
