"""Independent brute-force oracles shared by the tests and the acceptance run."""

import math

from smalldisc.arith import divisors


def kronecker(D, n):
    """Kronecker symbol (D/n) for n >= 1."""
    out = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            out = -out
    a, m = D % n, n
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                out = -out
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            out = -out
        a %= m
    return out if m == 1 else 0


def class_number_formula(D):
    """h(D) = -(1/|D|) sum a chi_D(a) for fundamental D < -4."""
    total = sum(a * kronecker(D, a) for a in range(1, -D))
    assert total % D == 0
    return total // D


def lattice_ideal_counts(form, units, Y):
    """Ideal counts by norm from representations by a reduced form of class number one."""
    a0, b0, c0 = form
    reps = [0] * Y
    bound = int(math.isqrt(4 * max(a0, c0) * Y // (4 * a0 * c0 - b0 * b0))) + 2
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            m = a0 * x * x + b0 * x * y + c0 * y * y
            if 0 < m < Y:
                reps[m] += 1
    assert all(r % units == 0 for r in reps)
    return [r // units for r in reps[1:]]


def brute_subgroup_count(n):
    units = [a for a in range(1, n + 1) if math.gcd(a, n) == 1] if n > 1 else [0]
    one = 1 % n

    def close(gens):
        H = {one}
        frontier = [one]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = x * g % n
                if y not in H:
                    H.add(y)
                    frontier.append(y)
        return frozenset(H)

    found = {close([])}
    todo = list(found)
    while todo:
        H = todo.pop()
        for g in units:
            K = close(list(H) + [g])
            if K not in found:
                found.add(K)
                todo.append(K)
    return len(found)


def brute_conductor(chi):
    """Least d | n with chi trivial on every unit a = 1 mod d."""
    n = chi.modulus
    for d in divisors(n):
        if all(chi(a).is_one() for a in range(1, n + 1, d) if math.gcd(a, n) == 1):
            return d
    raise AssertionError("unreachable")


def closed_form_cyclotomic_disc(n):
    """n^phi(n) / prod_{p | n} p^(phi(n)/(p-1)), with phi and primes by direct scan."""
    phi = sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    den = math.prod(p ** (phi // (p - 1)) for p in primes)
    assert n**phi % den == 0
    return n**phi // den
