"""JSON encodings.  Rationals always travel as "num/den" strings."""

from __future__ import annotations

import json
from fractions import Fraction

from .counting import CountingInput, GenusRep
from .discform import DiscIsometry, FiniteQuadraticForm, subgroup_from_generators
from .lattice import IntegerLattice, LatticeError


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"{s!r}: rationals must be given as strings or integers")
    return Fraction(s)


def lattice_from_json(doc) -> IntegerLattice:
    if not isinstance(doc, dict) or "gram" not in doc:
        raise LatticeError('lattice document needs a "gram" entry')
    gram = doc["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise LatticeError('"gram" must be a list of rows')
    for i, row in enumerate(gram):
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise LatticeError(f"gram[{i}][{j}] = {x!r} is not an integer")
    return IntegerLattice(tuple(tuple(r) for r in gram), doc.get("label"))


def load_lattice(path) -> IntegerLattice:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise LatticeError(f"{path}: invalid JSON ({e})") from None
    return lattice_from_json(doc)


def lattice_to_json(L: IntegerLattice) -> dict:
    doc = {"gram": [list(r) for r in L.gram]}
    if L.label:
        doc["label"] = L.label
    return doc


def form_to_json(F: FiniteQuadraticForm) -> dict:
    return {
        "orders": list(F.orders),
        "q_gram": [[frac_str(x) for x in row] for row in F.q_gram],
    }


def form_from_json(doc) -> FiniteQuadraticForm:
    return FiniteQuadraticForm(
        tuple(int(d) for d in doc["orders"]),
        tuple(tuple(parse_frac(x) for x in row) for row in doc["q_gram"]),
    )


def isometry_from_json(matrix) -> DiscIsometry:
    return DiscIsometry(tuple(tuple(int(x) for x in row) for row in matrix))


def counting_input_from_json(doc) -> CountingInput:
    """Schema::

        {"hodge_form": FORM (optional, default: first rep's form),
         "hodge_generators": [MATRIX, ...],
         "genus_reps": [{"label": str, "form": FORM,
                         "left_generators": [MATRIX, ...]}, ...]}

    FORM is {"orders": [...], "q_gram": [["num/den", ...], ...]} and a
    MATRIX has column j equal to the image of generator j.
    """
    reps = []
    for r in doc["genus_reps"]:
        F = form_from_json(r["form"])
        gens = [isometry_from_json(m) for m in r.get("left_generators", [])]
        reps.append(GenusRep(F, subgroup_from_generators(F, gens), r.get("label")))
    if not reps:
        raise ValueError("genus_reps is empty")
    H_form = form_from_json(doc["hodge_form"]) if "hodge_form" in doc else reps[0].form
    H = subgroup_from_generators(H_form, [isometry_from_json(m) for m in doc.get("hodge_generators", [])])
    return CountingInput(tuple(reps), H)


def counting_input_to_json(inp: CountingInput) -> dict:
    def gens(G):
        return [[list(r) for r in g.matrix] for g in G.elements]

    return {
        "hodge_form": form_to_json(inp.hodge_image.form),
        "hodge_generators": gens(inp.hodge_image),
        "genus_reps": [
            {"label": rep.label, "form": form_to_json(rep.form), "left_generators": gens(rep.left)}
            for rep in inp.genus_reps
        ],
    }


def dumps(doc, pretty: bool = False) -> str:
    return json.dumps(doc, sort_keys=True, indent=2 if pretty else None,
                      separators=None if pretty else (",", ":"))
