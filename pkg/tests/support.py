"""Constants shared between the fixtures and the test modules."""

from v2isign import BASE_TIME

SEED = 0x5EED

# one validity window wide enough for every timestamp the tests use
PID_WINDOW = (BASE_TIME, BASE_TIME + 1_000_000)
