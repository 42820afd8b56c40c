"""Pure-Python kernels; same API and results as the compiled ``_kernels``."""


def n_statistic_labels(labels):
    """Count pairs ``x > y`` whose block label satisfies ``labels[x] > labels[y]``.

    ``labels[x - 1]`` is the block index of element ``x``.
    """
    nblocks = max(labels, default=-1) + 1
    seen = [0] * nblocks
    total = 0
    for lab in labels:
        total += sum(seen[:lab])
        seen[lab] += 1
    return total


def nstat_histogram(profile):
    """Histogram of the N-statistic over every ordered set partition of
    ``{1..k}`` with block sizes ``profile`` (brute-force enumeration).

    Returns a list ``h`` with ``h[n]`` = number of partitions with statistic ``n``.
    """
    profile = [int(p) for p in profile]
    if any(p < 0 for p in profile):
        return []
    k = sum(profile)
    nb = len(profile)
    top = 0
    for c in range(nb):
        top += profile[c] * sum(profile[:c])
    hist = [0] * (top + 1)
    filled = [0] * nb

    def rec(x, acc):
        if x == k:
            hist[acc] += 1
            return
        below = 0
        for c in range(nb):
            if filled[c] < profile[c]:
                filled[c] += 1
                rec(x + 1, acc + below)
                filled[c] -= 1
            below += filled[c]

    rec(0, 0)
    return hist
