import pytest

from vran_avail.units import DAY, HOUR, MINUTE, MONTH, YEAR, RateParams


def grid_params(mttf_h, mttf_o, mttr_o, mttr_s, mtfo=None, mttr_h=10 * HOUR, mttf_s=2 * MONTH):
    """Reference parameters in seconds; MTTR_h and MTTF_s default to the values shared by every reference row."""
    return RateParams.from_seconds(mttf_h=mttf_h, mttr_h=mttr_h, mttf_o=mttf_o, mttr_o=mttr_o,
                                   mttf_s=mttf_s, mttr_s=mttr_s, mtfo_o=mtfo, mtfo_h=mtfo)


@pytest.fixture
def baseline_aa():
    return grid_params(10 * YEAR, 10 * MONTH, 90 * MINUTE, 30 * MINUTE)


@pytest.fixture
def stressed():
    """Failures every few days so outages are frequent enough to simulate cheaply."""
    return RateParams.from_seconds(mttf_h=20 * DAY, mttr_h=10 * HOUR, mttf_o=2 * DAY, mttr_o=3 * HOUR,
                                   mttf_s=1 * DAY, mttr_s=2 * HOUR, mtfo_o=1 * HOUR, mtfo_h=2 * HOUR)


# Acceptance criteria: each check records a verdict; one line per criterion is printed at the end.
_VERDICTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_VERDICTS] = {}


@pytest.fixture
def criterion(request):
    """``criterion(n, title, ok, detail)`` records a verdict for criterion ``n`` and asserts it."""
    verdicts = request.config.stash[_VERDICTS]

    def record(number: int, title: str, ok: bool, detail: str) -> None:
        verdicts.setdefault(number, (title, []))[1].append((bool(ok), detail))
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts = config.stash.get(_VERDICTS, {})
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(verdicts):
        title, checks = verdicts[number]
        ok = all(c for c, _ in checks)
        passed = sum(c for c, _ in checks)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} "
                                    f"({passed}/{len(checks)} checks)")
        for c, detail in checks:
            if not c:
                terminalreporter.write_line(f"        failed: {detail}")
