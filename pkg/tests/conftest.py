"""Shared fixtures: scenario registries and random vector generation."""

from fractions import Fraction
import random

from tensorcanon import frontend, galg
from tensorcanon.texpr import Registry, all_perms

# The standard scenarios: an antisymmetric and a symmetric pair tensor,
# their rank-3 analogues, and a curvature-type rank-4 tensor with a
# three-term cyclic identity.
RELATIONS = {
    "a2": ["a2(i,j)+a2(j,i)"],
    "s2": ["s2(i,j)-s2(j,i)"],
    "a3": ["a3(i,j,k)+a3(j,i,k)", "a3(i,j,k)-a3(j,k,i)"],
    "s3": ["s3(i,j,k)-s3(j,i,k)", "s3(i,j,k)-s3(j,k,i)"],
    "ri": ["ri(i,j,k,l)+ri(j,i,k,l)", "ri(i,j,k,l)+ri(i,j,l,k)",
           "ri(i,j,k,l)+ri(i,k,l,j)+ri(i,l,j,k)"],
}


def raw_terms(text: str):
    """Parse one expression into raw (coeff, factors) terms."""
    stmt = frontend.parse(text + ";")[0]
    return frontend.to_raw_terms(frontend.resolve(stmt.expr, {}))


def make_registry(*tensors: str, max_rank: int = 8) -> Registry:
    reg = Registry(max_rank=max_rank)
    for name in tensors:
        reg.declare(name)
        for rel in RELATIONS.get(name, []):
            reg.declare_symmetry(raw_terms(rel))
    return reg


def random_vector(rng: random.Random, n: int, max_terms: int = 4):
    perms = list(all_perms(n))
    d = {}
    for _ in range(rng.randint(1, max_terms)):
        p = rng.choice(perms)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        d[p] = d.get(p, Fraction(0)) + c
    return galg.from_dict(n, d)
