"""Shared record of acceptance criteria outcomes, printed at the end of a run."""

RESULTS: dict[int, tuple[str, str, str]] = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    RESULTS[number] = (title, "PASS" if ok else "FAIL", detail)


def lines() -> list[str]:
    return [f"criterion {n} [{st}] {title}: {detail}" for n, (title, st, detail) in sorted(RESULTS.items())]
