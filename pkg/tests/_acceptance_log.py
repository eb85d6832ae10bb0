"""Pass/fail lines collected by the acceptance suite."""
RESULTS: dict[int, tuple[bool, str]] = {}


def report(n: int, checks: dict[str, bool], summary: str) -> None:
    ok = all(checks.values())
    failed = [name for name, good in checks.items() if not good]
    text = summary if ok else f"{summary}; failed: {', '.join(failed)}"
    RESULTS[n] = (ok, text)
    print(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}")
    assert ok, text
