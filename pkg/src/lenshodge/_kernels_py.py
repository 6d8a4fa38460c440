"""Pure-Python fallback for the compiled kernels (same signatures and results)."""
import numpy as np


def hodge_accumulate(exps, mults, kmax, p, wpow):
    """Residues mod p of sum_g mult_g * [x^k y^j] det(I + y g) / det(I - x g)."""
    exps = np.asarray(exps).tolist()
    mults = [int(m) for m in mults]
    wpow = [int(w) for w in wpow]
    p = int(p)
    n = len(exps[0]) if exps else 0
    acc = [[0] * (n + 1) for _ in range(kmax + 1)]
    c = [0] * (kmax + 1)
    for row, mult in zip(exps, mults):
        b = [1] + [0] * n
        e = [1] + [0] * n
        for i, ex in enumerate(row):
            lam = wpow[ex]
            for j in range(i + 1, 0, -1):
                b[j] = (b[j] - lam * b[j - 1]) % p
                e[j] = (e[j] + lam * e[j - 1]) % p
        me = [mult * v % p for v in e]
        c[0] = 1
        acc0 = acc[0]
        for j in range(n + 1):
            acc0[j] += me[j]
        for k in range(1, kmax + 1):
            s = 0
            for l in range(1, min(k, n) + 1):
                s += b[l] * c[k - l]
            ck = -s % p
            c[k] = ck
            if ck:
                row_k = acc[k]
                for j in range(n + 1):
                    row_k[j] += ck * me[j]
    return np.array([[v % p for v in r] for r in acc], dtype=np.uint64).reshape(kmax + 1, n + 1)


def rational_sums(exps, xs, ys, p, wpow):
    """Per point, sum over rows of prod_i (y - w^e_i)/(x - w^e_i) as ``(num, den)``."""
    exps = np.asarray(exps).tolist()
    wpow = [int(w) for w in wpow]
    p = int(p)
    nums, dens = [], []
    for x, y in zip(xs, ys):
        x, y = int(x), int(y)
        num, den = 0, 1
        for row in exps:
            Nk = Dk = 1
            for ex in row:
                lam = wpow[ex]
                Nk = Nk * (y - lam) % p
                Dk = Dk * (x - lam) % p
            num = (num * Dk + Nk * den) % p
            den = den * Dk % p
        nums.append(num)
        dens.append(den)
    return np.array(nums, dtype=np.uint64), np.array(dens, dtype=np.uint64)
