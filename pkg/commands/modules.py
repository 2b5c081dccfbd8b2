"""
Module commands: free, random, apply, dims, hom.

Modules go to --out when given, otherwise they are printed as JSON.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging

import pandas as pd

import config
from models.fimodule import TruncatedFIModule
from models.free import make_free
from models.functors import FunctorTag, apply_functor, neg_shift
from models.hom import hom_space
from models.random_modules import random_module
from models.scalars import FieldSpec
from utils.serialization import dumps, load_module, save_module

logger = logging.getLogger(__name__)


def field_arg(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def emit_module(V: TruncatedFIModule, out: str | None):
    if out:
        path = save_module(V, out)
        print(f"✅ wrote {path} (dims {', '.join(map(str, V.dims))})")
    else:
        print(dumps(V), end="")


def dims_frame(V: TruncatedFIModule) -> pd.DataFrame:
    return pd.DataFrame({"degree": range(V.trunc + 1), "dim": list(V.dims)}).set_index("degree")


def cmd_free(args) -> int:
    emit_module(make_free(args.gen, args.field, args.trunc), args.out)
    return 0


def cmd_random(args) -> int:
    emit_module(random_module(args.seed, args.profile, args.field, args.trunc), args.out)
    return 0


def cmd_apply(args) -> int:
    V = load_module(args.input)
    tag = FunctorTag(args.functor)
    if tag is FunctorTag.NEG_SHIFT and args.extended:
        W = neg_shift(V, extended=True)
    else:
        W = apply_functor(tag, V)
    provenance = {**V.meta, "functor": tag.value}
    emit_module(dataclasses.replace(W, meta=provenance), args.out)
    return 0


def cmd_dims(args) -> int:
    V = load_module(args.input)
    print(dims_frame(V).T.to_string())
    return 0


def cmd_hom(args) -> int:
    V, W = load_module(args.a), load_module(args.b)
    space = hom_space(V, W, args.window)
    print(f"dim Hom_≤{space.window} = {space.dim}")
    if args.basis:
        for k, phi in enumerate(space.basis):
            print(f"# basis map {k}")
            for n, component in enumerate(phi.components):
                if component.rows and component.cols:
                    print(f"  degree {n}: {component.to_text()}")
    return 0


def register(subparsers):
    free = subparsers.add_parser("free", help="free module M([m])")
    free.add_argument("--gen", type=int, required=True)
    free.add_argument("--trunc", type=int, default=config.DEFAULT_TRUNC)
    free.add_argument("--field", type=field_arg, default=config.DEFAULT_FIELD)
    free.add_argument("--out")
    free.set_defaults(handler=cmd_free)

    rand = subparsers.add_parser("random", help="seeded random module")
    rand.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    rand.add_argument("--profile", choices=config.RANDOM_PROFILES, default=config.DEFAULT_PROFILE)
    rand.add_argument("--trunc", type=int, default=config.DEFAULT_TRUNC)
    rand.add_argument("--field", type=field_arg, default=config.DEFAULT_FIELD)
    rand.add_argument("--out")
    rand.set_defaults(handler=cmd_random)

    apply = subparsers.add_parser("apply", help="apply S, D, Sneg or Qprime")
    apply.add_argument("--functor", choices=[t.value for t in FunctorTag], required=True)
    apply.add_argument("--in", dest="input", required=True)
    apply.add_argument("--extended", action="store_true", help="Sneg one degree past the input truncation")
    apply.add_argument("--out")
    apply.set_defaults(handler=cmd_apply)

    dims = subparsers.add_parser("dims", help="per-degree dimensions")
    dims.add_argument("--in", dest="input", required=True)
    dims.set_defaults(handler=cmd_dims)

    hom = subparsers.add_parser("hom", help="dimension of Hom(A, B)")
    hom.add_argument("--a", required=True)
    hom.add_argument("--b", required=True)
    hom.add_argument("--window", type=int)
    hom.add_argument("--basis", action="store_true")
    hom.set_defaults(handler=cmd_hom)
