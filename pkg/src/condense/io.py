"""File formats (.fcat, .alg, .bim, presentation and functor JSON) and a
workspace that loads, validates and caches them by path."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .condensation import (
    Bimodule,
    Condensation2,
    CondensationMonad,
    build_group_algebra,
    check_bimodule,
    check_condensation_monad,
    trivial_monad,
    unit_copies_monad,
    unit_summand_monad,
)
from .mod2cat import ModCPresentation
from .cycfield import scalar_from_json, scalar_to_json
from .fusion import FusionCategory, fcat_from_json
from .linalg import SpMat
from .skeletal import SkMorphism
from .ssvec import FunctorPresentation, LinearCategoryPresentation, SSSignature, matrix_algebra_presentation, presentation_from_ss

__all__ = [
    "Workspace",
    "WorkspaceConfig",
    "monad_to_json",
    "bimodule_to_json",
    "presentation_to_json",
    "presentation_from_json",
    "functor_to_json",
    "functor_from_json",
    "condensation_to_json",
    "ValidationError",
    "write_json",
]

DEFAULT_CONDUCTOR_CAP = 60


@dataclass
class WorkspaceConfig:
    conductor_cap: int = DEFAULT_CONDUCTOR_CAP
    search_bound: int = int(os.environ.get("CONDENSE_SEARCH_BOUND", "8"))


class ValidationError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False)


def monad_to_json(m: CondensationMonad, fcat_ref) -> dict:
    return {
        "kind": "algebra",
        "name": m.name,
        "fcat": fcat_ref,
        "object": list(m.e.mult),
        "mu": m.mu.to_json(),
        "delta": m.delta.to_json(),
    }


def bimodule_to_json(b: Bimodule, fcat_ref, left_ref=None, right_ref=None) -> dict:
    return {
        "kind": "bimodule",
        "name": b.name,
        "fcat": fcat_ref,
        "left": left_ref if left_ref is not None else monad_to_json(b.left, fcat_ref),
        "right": right_ref if right_ref is not None else monad_to_json(b.right, fcat_ref),
        "object": list(b.b.mult),
        "nu_r": b.nu_r.to_json(),
        "beta_r": b.beta_r.to_json(),
        "nu_l": b.nu_l.to_json(),
        "beta_l": b.beta_l.to_json(),
    }


# -- linear category presentations -------------------------------------------------


def presentation_to_json(P: LinearCategoryPresentation) -> dict:
    """Hom dimensions and composition structure constants as sparse lists:
    ``[a, b, c, i, j, k, value]`` means g_i ∘ f_j has coefficient value on
    basis vector k of hom(a, c), for f_j in hom(a, b) and g_i in hom(b, c)."""
    comp = []
    for (a, b, c), table in P.comp.items():
        for (i, j), vec in sorted(table.items()):
            for k, v in sorted(vec.items()):
                comp.append([a, b, c, i, j, k, scalar_to_json(v)])
    return {
        "kind": "presentation",
        "objects": list(P.objects),
        "hom": [[a, b, d] for (a, b), d in P.hom.items() if d],
        "comp": comp,
        "id": {a: {str(k): scalar_to_json(v) for k, v in sorted(P.ids[a].items())} for a in P.objects},
    }


def presentation_from_json(obj: dict) -> LinearCategoryPresentation:
    if "matrix_algebra" in obj:
        return matrix_algebra_presentation(int(obj["matrix_algebra"]), obj.get("name", "X"))
    if "semisimple" in obj:
        ss = obj["semisimple"]
        sig = SSSignature(tuple(ss["labels"]))
        return presentation_from_ss({k: sig.obj(tuple(v)) for k, v in ss["objects"].items()})
    objects = list(obj["objects"])
    hom = {(a, b): int(d) for a, b, d in obj.get("hom", [])}
    comp: dict = {}
    for a, b, c, i, j, k, v in obj.get("comp", []):
        comp.setdefault((a, b, c), {}).setdefault((int(i), int(j)), {})[int(k)] = scalar_from_json(v)
    ids = {a: {int(k): scalar_from_json(v) for k, v in obj["id"][a].items()} for a in objects}
    try:
        return LinearCategoryPresentation(objects, hom, comp, ids)
    except ValueError as exc:
        raise ValidationError(f"invalid presentation: {exc}") from None


def functor_to_json(F: FunctorPresentation, source_ref, target_ref) -> dict:
    maps = []
    for (a, b), m in sorted(F.hom_maps.items()):
        if m.nrows and m.ncols:
            maps.append([a, b, [[scalar_to_json(v) for v in row] for row in m.to_dense()]])
    return {"kind": "functor", "source": source_ref, "target": target_ref, "obj_map": dict(F.obj_map), "hom_maps": maps}


def functor_from_json(obj: dict, source: LinearCategoryPresentation, target: LinearCategoryPresentation) -> FunctorPresentation:
    om = dict(obj["obj_map"])
    maps = {}
    for a, b, dense in obj.get("hom_maps", []):
        rows = [[scalar_from_json(v) for v in row] for row in dense]
        maps[(a, b)] = SpMat.from_dense(rows, source.hom_dim(a, b))
    for a in source.objects:
        for b in source.objects:
            if (a, b) not in maps:
                maps[(a, b)] = SpMat(target.hom_dim(om[a], om[b]), source.hom_dim(a, b))
    return FunctorPresentation(source, target, om, maps)


def condensation_to_json(c: Condensation2, fcat_ref) -> dict:
    return {
        "kind": "condensation",
        "fcat": fcat_ref,
        "f": list(c.f.mult),
        "g": list(c.g.mult),
        "phi": c.phi.to_json(),
        "gamma": c.gamma.to_json(),
    }


# -- workspace ----------------------------------------------------------------------


@dataclass
class Workspace:
    config: WorkspaceConfig = field(default_factory=WorkspaceConfig)
    fcats: dict = field(default_factory=dict)
    algebras: dict = field(default_factory=dict)
    bimodules: dict = field(default_factory=dict)

    @staticmethod
    def _read(path) -> dict:
        p = Path(path)
        if not p.exists():
            raise FileNotFoundError(f"no such file: {path}")
        with p.open() as fh:
            return json.load(fh)

    def _resolve(self, ref, base: Optional[Path]) -> Path:
        p = Path(ref)
        if not p.is_absolute() and base is not None:
            p = base / p
        return p.resolve()

    def load_fcat(self, path) -> FusionCategory:
        key = str(Path(path).resolve())
        if key not in self.fcats:
            obj = self._read(path)
            cap = self.config.conductor_cap
            if int(obj.get("conductor", 1)) > cap:
                raise ValidationError(f"conductor {obj['conductor']} exceeds the cap {cap} (see --conductor-cap)")
            fc = fcat_from_json(obj)
            self.fcats[key] = fc
        return self.fcats[key]

    def _fcat_of(self, obj: dict, base: Path) -> FusionCategory:
        ref = obj.get("fcat")
        if isinstance(ref, dict):
            key = "inline:" + json.dumps(ref, sort_keys=True)
            if key not in self.fcats:
                self.fcats[key] = fcat_from_json(ref)
            return self.fcats[key]
        if ref is None:
            raise ValidationError("missing 'fcat' reference")
        return self.load_fcat(self._resolve(ref, base))

    def monad_from_json(
        self, obj: dict, base: Path, fc: Optional[FusionCategory] = None, validate: bool = True, name: str = ""
    ) -> CondensationMonad:
        fc = fc or self._fcat_of(obj, base)
        e = fc.signature.obj(tuple(int(m) for m in obj["object"]))
        mu = SkMorphism.from_json(fc, obj["mu"])
        de = SkMorphism.from_json(fc, obj["delta"])
        m = CondensationMonad(fc, e, mu, de, obj.get("name") or name)
        if validate:
            rep = check_condensation_monad(m)
            if not rep.ok:
                raise ValidationError(f"algebra {m.name!r} fails {rep.failure}")
        return m

    def load_algebra(self, path, validate: bool = True) -> CondensationMonad:
        key = str(Path(path).resolve())
        if key not in self.algebras:
            obj = self._read(path)
            self.algebras[key] = self.monad_from_json(obj, Path(key).parent, validate=validate, name=Path(key).stem)
        return self.algebras[key]

    def _monad_ref(self, ref, base: Path, fc) -> CondensationMonad:
        if isinstance(ref, str):
            return self.load_algebra(self._resolve(ref, base))
        # inline: reuse an identical cached algebra so identity checks line up
        cache_key = "inline:" + json.dumps(ref, sort_keys=True)
        if cache_key not in self.algebras:
            self.algebras[cache_key] = self.monad_from_json(ref, base, fc)
        return self.algebras[cache_key]

    def load_bimodule(self, path, validate: bool = True) -> Bimodule:
        key = str(Path(path).resolve())
        if key not in self.bimodules:
            obj = self._read(path)
            base = Path(key).parent
            fc = self._fcat_of(obj, base)
            left = self._monad_ref(obj["left"], base, fc)
            right = self._monad_ref(obj["right"], base, fc)
            if left.fc is not fc or right.fc is not fc:
                raise ValidationError(f"{path}: monads reference a different fusion category file")
            b = fc.signature.obj(tuple(int(m) for m in obj["object"]))
            sk = lambda k: SkMorphism.from_json(fc, obj[k])
            B = Bimodule(left, right, b, sk("nu_r"), sk("beta_r"), sk("nu_l"), sk("beta_l"), obj.get("name", Path(key).stem))
            if validate:
                rep = check_bimodule(B)
                if not rep.ok:
                    raise ValidationError(f"{path}: bimodule fails {rep.failure}")
            self.bimodules[key] = B
        return self.bimodules[key]

    def fcat_path(self, fc: FusionCategory) -> Optional[str]:
        for key, f in self.fcats.items():
            if f is fc:
                return key
        return None

    def load_condensation(self, path) -> Condensation2:
        obj = self._read(path)
        base = Path(path).resolve().parent
        fc = self._fcat_of(obj, base)
        sig = fc.signature
        f = sig.obj(tuple(int(m) for m in obj["f"]))
        g = sig.obj(tuple(int(m) for m in obj["g"]))
        c = Condensation2(fc, f, g, SkMorphism.from_json(fc, obj["phi"]), SkMorphism.from_json(fc, obj["gamma"]))
        rep = c.check()
        if not rep.ok:
            raise ValidationError(f"{path}: condensation fails {rep.failure}")
        return c

    def load_modcat(self, path) -> ModCPresentation:
        """Objects of Mod(C) by name; each entry is an .alg path, an inline
        algebra, or one of {"trivial": true}, {"group_algebra": d},
        {"unit_summand": i}, {"unit_copies": k}."""
        obj = self._read(path)
        base = Path(path).resolve().parent
        fc = self._fcat_of(obj, base)
        algebras = {}
        for name, ref in obj["algebras"].items():
            if isinstance(ref, dict) and "trivial" in ref:
                m = trivial_monad(fc)
            elif isinstance(ref, dict) and "group_algebra" in ref:
                m = build_group_algebra(fc, ref["group_algebra"])
                if not isinstance(m, CondensationMonad):
                    raise ValidationError(f"{name}: {m.report.failure}")
            elif isinstance(ref, dict) and "unit_summand" in ref:
                m = unit_summand_monad(fc, int(ref["unit_summand"]))
            elif isinstance(ref, dict) and "unit_copies" in ref:
                m = unit_copies_monad(fc, int(ref["unit_copies"]))
            else:
                m = self._monad_ref(ref, base, fc)
                if m.fc is not fc:
                    raise ValidationError(f"{name}: algebra references a different fusion category file")
            algebras[name] = m
        return ModCPresentation(fc, algebras)

    def load_presentation(self, path) -> LinearCategoryPresentation:
        return presentation_from_json(self._read(path))

    def load_functor(self, path) -> FunctorPresentation:
        obj = self._read(path)
        base = Path(path).resolve().parent

        def pres(ref):
            if isinstance(ref, str):
                return self.load_presentation(self._resolve(ref, base))
            return presentation_from_json(ref)

        return functor_from_json(obj, pres(obj["source"]), pres(obj["target"]))


def write_json(path, obj) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(_dump(obj) + "\n")
