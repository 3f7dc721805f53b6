"""Pure-Python edit-distance kernel, import fallback for the compiled one."""


def levenshtein(s: str, t: str) -> int:
    """Unit-cost edit distance (replacement, insertion, deletion)."""
    if not s:
        return len(t)
    if not t:
        return len(s)
    prev = list(range(len(t) + 1))
    for i, cs in enumerate(s, start=1):
        curr = [i]
        append = curr.append
        for j, ct in enumerate(t, start=1):
            d = prev[j - 1] + (cs != ct)
            up = prev[j] + 1
            if up < d:
                d = up
            left = curr[j - 1] + 1
            if left < d:
                d = left
            append(d)
        prev = curr
    return prev[-1]
