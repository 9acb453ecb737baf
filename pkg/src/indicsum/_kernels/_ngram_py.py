"""Pure-Python n-gram counting kernel (fallback for the compiled one)."""

from collections import Counter


def clipped_ngram_stats(cand, ref, n):
    """Count clipped n-gram matches between two token sequences.

    Returns ``(overlap, cand_total, ref_total)`` where ``overlap`` is
    the sum over distinct n-grams of min(candidate count, reference
    count) and the totals are the number of n-gram windows on each
    side.  A sequence shorter than ``n`` contributes zero windows.
    """
    cand_total = len(cand) - n + 1 if len(cand) >= n else 0
    ref_total = len(ref) - n + 1 if len(ref) >= n else 0
    if cand_total == 0 or ref_total == 0:
        return 0, cand_total, ref_total
    cand_counts = Counter(tuple(cand[i:i + n]) for i in range(cand_total))
    ref_counts = Counter(tuple(ref[i:i + n]) for i in range(ref_total))
    if len(cand_counts) > len(ref_counts):
        cand_counts, ref_counts = ref_counts, cand_counts
    overlap = sum(min(c, ref_counts[g]) for g, c in cand_counts.items() if g in ref_counts)
    return overlap, cand_total, ref_total
