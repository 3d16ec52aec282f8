"""Slow, independent reference implementations used as test oracles.

Everything here works on plain nested lists and loops; nothing is shared
with the package except the table data passed in.
"""

from itertools import combinations, product


def tables(R):
    return R.add.tolist(), R.mul.tolist(), R.one


def first_axiom_failure(add, mul, one=None):
    """Name of the first violated axiom in the package's reporting order, else None."""
    n = len(add)
    E = range(n)
    if any(add[0][a] != a or add[a][0] != a for a in E):
        return "additive identity"
    if any(not any(add[a][b] == 0 for b in E) for a in E):
        return "additive inverse"
    if any(add[a][b] != add[b][a] for a in E for b in E):
        return "additive commutativity"
    if any(add[add[a][b]][c] != add[a][add[b][c]] for a in E for b in E for c in E):
        return "additive associativity"
    if any(mul[mul[a][b]][c] != mul[a][mul[b][c]] for a in E for b in E for c in E):
        return "multiplicative associativity"
    if any(mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] for a in E for b in E for c in E):
        return "left distributivity"
    if any(mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]] for a in E for b in E for c in E):
        return "right distributivity"
    if one is not None and any(mul[one][a] != a or mul[a][one] != a for a in E):
        return "unit"
    return None


def is_ring(add, mul, one=None):
    return first_axiom_failure(add, mul, one) is None


def unit_set(R):
    add, mul, one = tables(R)
    n = len(add)
    return {a for a in range(n) if any(mul[a][b] == one and mul[b][a] == one for b in range(n))}


def neg(add, a):
    return next(b for b in range(len(add)) if add[a][b] == 0)


def closed_ideal(add, mul, S):
    S = set(S)
    if 0 not in S:
        return False
    for a in S:
        if neg(add, a) not in S:
            return False
        for b in S:
            if add[a][b] not in S:
                return False
        for r in range(len(add)):
            if mul[r][a] not in S or mul[a][r] not in S:
                return False
    return True


def ideals_by_subsets(R):
    """Every two-sided ideal, by testing every subset containing 0."""
    add, mul, _ = tables(R)
    n = len(add)
    rest = list(range(1, n))
    found = []
    for k in range(n):
        for extra in combinations(rest, k):
            S = (0,) + extra
            if n % len(S) == 0 and closed_ideal(add, mul, S):
                found.append(S)
    return found


def maximal_by_subsets(R):
    ideals = [set(I) for I in ideals_by_subsets(R)]
    n = R.order
    proper = [I for I in ideals if len(I) < n]
    return sorted(tuple(sorted(I)) for I in proper if not any(I < J for J in proper))


def subfields_by_subsets(R):
    """Subsets containing 0 and 1 closed under +, -, * whose non-zero part is a group."""
    add, mul, one = tables(R)
    n = len(add)
    rest = [a for a in range(1, n) if a != one]
    found = []
    for k in range(n - 1):
        for extra in combinations(rest, k):
            S = set((0, one) + extra)
            if n % len(S):
                continue
            if any(add[a][b] not in S or mul[a][b] not in S for a in S for b in S):
                continue
            if any(neg(add, a) not in S for a in S):
                continue
            nz = S - {0}
            if all(any(mul[a][b] == one for b in nz) for a in nz) and \
                    all(mul[a][b] == mul[b][a] for a in S for b in S):
                found.append(tuple(sorted(S)))
    return sorted(found, key=lambda m: (len(m), m))


def is_hom_map(add1, mul1, add2, mul2, f):
    n = len(add1)
    return all(
        f[add1[a][b]] == add2[f[a]][f[b]] and f[mul1[a][b]] == mul2[f[a]][f[b]]
        for a in range(n) for b in range(n)
    )


def section_by_brute_force(R, M):
    """Search every choice of coset representatives for a unital ring section of R -> R/M.

    The coset of 0 must go to 0 and the coset of 1 to 1; every other coset
    tries each of its members. Returns the representative list or None.
    """
    add, mul, one = tables(R)
    n = len(add)
    Mset = set(M)
    cosets = []
    seen = set()
    for a in range(n):
        if a in seen:
            continue
        c = sorted(add[a][m] for m in Mset)
        seen.update(c)
        cosets.append(c)
    where = {a: i for i, c in enumerate(cosets) for a in c}
    zero_c, one_c = where[0], where[one]
    choices = []
    for i, c in enumerate(cosets):
        if i == zero_c:
            choices.append([0])
        elif i == one_c:
            choices.append([one])
        else:
            choices.append(c)
    for pick in product(*choices):
        image = set(pick)
        ok = True
        for x in pick:
            for y in pick:
                if add[x][y] not in image or mul[x][y] not in image:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return list(pick)
    return None


def poly_mul_mod(a, b, p, f):
    """Multiply coefficient lists (ascending) over Z/p modulo monic ``f``."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    d = len(f) - 1
    for i in range(len(prod) - 1, d - 1, -1):
        c = prod[i]
        if c:
            for j in range(d + 1):
                prod[i - d + j] = (prod[i - d + j] - c * f[j]) % p
    out = (prod + [0] * d)[:d]
    return out


def has_root_or_factor(f, p):
    """Trial division by every monic polynomial of degree <= deg(f) // 2."""
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        for low in product(range(p), repeat=k):
            g = list(low) + [1]
            r = list(f)
            for i in range(len(r) - 1, k - 1, -1):
                c = r[i]
                if c:
                    for j in range(k + 1):
                        r[i - k + j] = (r[i - k + j] - c * g[j]) % p
            if not any(r[:k]):
                return True
    return False


def additive_maps(add):
    n = len(add)
    return [
        f for f in product(range(n), repeat=n)
        if all(f[add[a][b]] == add[f[a]][f[b]] for a in range(n) for b in range(n))
    ]


def sdprod_tables(B, S, lam, rho):
    """(b,s)(c,t) = (bc + λ(s)(c) + ρ(t)(b), st) written out with loops, index b*|S|+s."""
    Ba, Bm = B.add.tolist(), B.mul.tolist()
    Sa, Sm = S.add.tolist(), S.mul.tolist()
    nB, nS = len(Ba), len(Sa)
    n = nB * nS
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for i in range(n):
        b, s = divmod(i, nS)
        for j in range(n):
            c, t = divmod(j, nS)
            add[i][j] = Ba[b][c] * nS + Sa[s][t]
            first = Ba[Ba[Bm[b][c]][lam[s][c]]][rho[t][b]]
            mul[i][j] = first * nS + Sm[s][t]
    return add, mul


def action_pairs_by_ring_check(B, S):
    """All (λ, ρ) whose semidirect tables form a ring with one (0, 1).

    λ(0) and ρ(0) are zero and λ(1), ρ(1) the identity (both forced by
    distributivity and the unit); the remaining values of S range over all
    additive maps of B. ``S`` must be generated additively by 1.
    """
    nB, nS = B.order, S.order
    maps = additive_maps(B.add.tolist())
    zero, ident = tuple([0] * nB), tuple(range(nB))
    free = [s for s in range(nS) if s not in (0, S.one)]
    found = []
    for lam_free in product(maps, repeat=len(free)):
        lam = {0: zero, S.one: ident, **dict(zip(free, lam_free))}
        for rho_free in product(maps, repeat=len(free)):
            rho = {0: zero, S.one: ident, **dict(zip(free, rho_free))}
            add, mul = sdprod_tables(B, S, lam, rho)
            if is_ring(add, mul, S.one):
                found.append(([lam[s] for s in range(nS)], [rho[s] for s in range(nS)]))
    return found


def subfields_by_cyclic_groups(R):
    """Subfields as {0} ∪ <g>: the unit group of a finite field is cyclic.

    Every unit g generates a candidate; it is a subfield when the set is
    closed under addition and negation, commutative, and of prime-power size.
    """
    add, mul, one = tables(R)
    n = len(add)
    found = set()
    for g in unit_set(R):
        powers, x = [one], g
        while x != one:
            powers.append(x)
            x = mul[x][g]
        S = set(powers) | {0}
        q = len(S)
        p = next(d for d in range(2, q + 1) if q % d == 0)
        while q % p == 0:
            q //= p
        if q != 1:
            continue
        if all(add[a][b] in S and mul[a][b] == mul[b][a] for a in S for b in S):
            found.add(tuple(sorted(S)))
    return sorted(found, key=lambda m: (len(m), m))
