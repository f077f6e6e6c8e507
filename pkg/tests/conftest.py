import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") == "call" and "criterion-" in rep.nodeid:
                elapsed = dict(rep.user_properties).get("elapsed")
                rows.append((rep.nodeid.split("[")[-1].rstrip("]"), outcome, elapsed))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, elapsed in sorted(rows):
        timing = f"{elapsed:.2f}s" if elapsed is not None else "-"
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'} {name} {timing}")
