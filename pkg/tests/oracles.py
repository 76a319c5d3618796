"""Brute-force reference implementations that share no code with the library's search routines."""
import itertools

import numpy as np


def add_table(S):
    return [[S.add(x, y) for y in range(S.n)] for x in range(S.n)]


def mul_table(S):
    return [[S.mul(x, y) for y in range(S.n)] for x in range(S.n)]


def all_additive_subgroups(S):
    """Every subset containing 0 and closed under +, by a power-set scan (finite: closed under + is enough)."""
    n = S.n
    A = add_table(S)
    out = []
    rest = list(range(1, n))
    for size in range(0, n):
        if n % (size + 1):
            continue
        for combo in itertools.combinations(rest, size):
            X = {0, *combo}
            if all(A[x][y] in X for x in X for y in X):
                out.append(frozenset(X))
    return out


def brute_ideals(S):
    M = mul_table(S)
    return {X for X in all_additive_subgroups(S)
            if all(M[r][x] in X and M[x][r] in X for x in X for r in range(S.n))}


def brute_subrngs(S):
    M = mul_table(S)
    return {X for X in all_additive_subgroups(S) if all(M[x][y] in X for x in X for y in X)}


def ideal_product_zero(S, A, B):
    M = mul_table(S)
    return all(M[a][b] == 0 for a in A for b in B)


def prime_by_definition(S, ideals):
    nonzero = [X for X in ideals if len(X) > 1]
    return bool(nonzero) and all(not ideal_product_zero(S, A, B) for A in nonzero for B in nonzero)


def semiprime_by_definition(S, ideals):
    return all(not ideal_product_zero(S, A, A) for A in ideals if len(A) > 1)


def is_field(S):
    M = mul_table(S)
    one = [u for u in range(S.n) if all(M[u][x] == x == M[x][u] for x in range(S.n))]
    if len(one) != 1:
        return False
    u = one[0]
    commutative = all(M[x][y] == M[y][x] for x in range(S.n) for y in range(S.n))
    inverses = all(any(M[x][y] == u for y in range(S.n)) for x in range(1, S.n))
    return commutative and inverses


def literal_hom_scan(source, target, multiplicative=True):
    """Every function I -> J (all |J|^|I| of them) passing the axioms on all element pairs."""
    I, R = source.I, source.R
    out = []
    for phi in itertools.product(range(target.n), repeat=I.n):
        ok = all(phi[I.add(x, y)] == target.add(phi[x], phi[y]) for x in range(I.n) for y in range(I.n))
        ok = ok and all(phi[source.act_left(r, x)] == target.act_left(r, phi[x])
                        and phi[source.act_right(x, r)] == target.act_right(phi[x], r)
                        for r in range(R.n) for x in range(I.n))
        if multiplicative:
            ok = ok and all(phi[I.mul(x, y)] == target.mul(phi[x], phi[y]) for x in range(I.n) for y in range(I.n))
        if ok:
            out.append(tuple(phi))
    return out


def ring_isomorphic(A, B, fixing=None):
    """Brute force over bijections; ``fixing`` optionally pairs embeddings that must be respected."""
    if A.n != B.n:
        return False
    n = A.n
    for perm in itertools.permutations(range(1, n)):
        f = (0, *perm)
        if fixing is not None and any(f[int(x)] != int(y) for x, y in fixing):
            continue
        if all(f[A.add(x, y)] == B.add(f[x], f[y]) and f[A.mul(x, y)] == B.mul(f[x], f[y])
               for x in range(n) for y in range(n)):
            return True
    return False


def is_ring_iso_map(A, B, table):
    t = np.asarray(table)
    if len(set(t.tolist())) != A.n or B.n != A.n:
        return False
    return all(t[A.add(x, y)] == B.add(int(t[x]), int(t[y])) and t[A.mul(x, y)] == B.mul(int(t[x]), int(t[y]))
               for x in range(A.n) for y in range(A.n))
