"""Shared random-input generators for property checks."""
from fdahp import SAATY_9, TFN, build_matrix, tfn_reciprocal
from fdahp.tfn import ValidationMode


def random_reciprocal_matrix(rng, n, mode=ValidationMode.STRICT, continuous=False):
    """Strictly reciprocal random matrix; continuous cells avoid exact ties."""
    ids = [f"C{i}" for i in range(n)]
    n_pairs = n * (n - 1) // 2
    if continuous:
        lows = rng.uniform(1 / 9, 9, n_pairs)
        grow = rng.uniform(1.0, 1.5, (n_pairs, 2))
    else:
        levels = rng.integers(2, 10, n_pairs)
        flips = rng.random(n_pairs) < 0.5
    entries = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if continuous:
                l = float(lows[k])
                m = l * float(grow[k, 0])
                t = TFN(l, m, m * float(grow[k, 1]))
            else:
                t = SAATY_9.tfn(int(levels[k]))
                if flips[k]:
                    t = tfn_reciprocal(t)
            entries.append((ids[i], ids[j], t))
            k += 1
    return build_matrix(entries, ids, mode)
