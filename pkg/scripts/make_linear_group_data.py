"""Regenerates the shipped permutation generators for SL(2,p) and PSL(2,q).

SL(2,p) acts on the nonzero vectors of F_p^2 through the classical
generators [[1,1],[0,1]] and [[0,1],[-1,0]]; PSL(2,q) acts on the
projective line through the corresponding Moebius maps (plus the scalar
multiplication and inversion maps for q = 8, where PGL = PSL).
"""

from __future__ import annotations

import pathlib

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "frlab" / "data"


def cycles_of(perm: list[int]) -> str:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        out.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(out) or "()"


def sl2_generators(p: int) -> tuple[int, list[list[int]]]:
    points = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(points)}

    def act(mat):
        a, b, c, d = mat
        return [index[((a * x + b * y) % p, (c * x + d * y) % p)]
                for (x, y) in points]

    return len(points), [act((1, 1, 0, 1)), act((0, 1, p - 1, 0))]


def psl2_prime_generators(p: int) -> tuple[int, list[list[int]]]:
    # points: 0..p-1 are the field, p is infinity
    inf = p

    def moebius(a, b, c, d):
        perm = []
        for x in range(p + 1):
            if x == inf:
                perm.append(index_of(a, c, p))
            else:
                den = (c * x + d) % p
                if den == 0:
                    perm.append(inf)
                else:
                    perm.append(((a * x + b) * pow(den, p - 2, p)) % p)
        return perm

    def index_of(a, c, p):
        if c % p == 0:
            return inf
        return (a * pow(c, p - 2, p)) % p

    return p + 1, [moebius(1, 1, 0, 1), moebius(0, 1, p - 1, 0)]


def psl2_8_generators() -> tuple[int, list[list[int]]]:
    # F8 = F2[t]/(t^3 + t + 1), elements as 3-bit ints, generator t = 0b010
    def fmul(a, b):
        r = 0
        for i in range(3):
            if (b >> i) & 1:
                r ^= a << i
        for i in (5, 4, 3):
            if (r >> i) & 1:
                r ^= (0b1011 << (i - 3))
        return r

    def finv(a):
        for b in range(1, 8):
            if fmul(a, b) == 1:
                return b
        raise ValueError

    inf = 8

    def perm_of(f):
        return [f(x) for x in range(9)]

    add1 = perm_of(lambda x: inf if x == inf else x ^ 1)
    mulg = perm_of(lambda x: inf if x == inf else fmul(x, 0b010))
    invm = perm_of(lambda x: 0 if x == inf else (inf if x == 0 else finv(x)))
    return 9, [add1, mulg, invm]


def write(name: str, degree: int, perms: list[list[int]], comment: str) -> None:
    lines = [f"# {comment}", f"perm {degree}"]
    lines += [cycles_of(p) for p in perms]
    (DATA / f"{name}.grp").write_text("\n".join(lines) + "\n")
    print(f"wrote {name}.grp (degree {degree}, {len(perms)} generators)")


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    for p in (3, 5, 7):
        deg, gens = sl2_generators(p)
        write(f"sl2_{p}", deg, gens,
              f"SL(2,{p}) on the nonzero vectors of F_{p}^2")
    for p in (5, 7, 11, 13):
        deg, gens = psl2_prime_generators(p)
        write(f"psl2_{p}", deg, gens, f"PSL(2,{p}) on the projective line")
    deg, gens = psl2_8_generators()
    write("psl2_8", deg, gens, "PSL(2,8) on the projective line over F_8")


if __name__ == "__main__":
    main()
