"""Published JSON schemas for the CLI's ``--format json`` output, one per subcommand."""

from __future__ import annotations

from .report.report import FLAGS, MEASURES, RELATIONS

_RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_INT = {"type": "integer"}
_NN = {"type": "integer", "minimum": 0}

_TERMS = {
    "type": "array",
    "items": {"type": "object", "required": ["mask", "num", "den"],
              "properties": {"mask": _NN, "num": _INT, "den": {"type": "integer", "minimum": 1}}},
}

_PROBLEM = {
    "type": "object",
    "required": ["name", "composition", "n", "rows", "cols"],
    "properties": {
        "name": {"type": ["string", "null"]},
        "composition": {"enum": ["and", "or", "xor", "raw"]},
        "n": {"type": ["integer", "null"]},
        "rows": _NN, "cols": _NN,
        "kind": {"type": ["string", "null"]},
    },
}

_APPROX_POLY = {
    "type": "object",
    "required": ["n", "eps", "support", "terms", "max_error", "verified"],
    "properties": {"n": _NN, "eps": _RATIONAL, "support": {"type": "array", "items": _NN},
                   "terms": _TERMS, "max_error": _RATIONAL, "verified": {"type": "boolean"}},
}

_BOUND = {
    "type": "object",
    "required": ["so", "exponent", "value", "flag"],
    "properties": {"so": _NN, "exponent": {"type": "number"}, "value": {"type": "number"},
                   "flag": {"enum": ["exact", "witnessed"]}},
}

ANALYZE = {
    "type": "object",
    "required": ["problem", "quantities", "entries", "annotations", "consistent"],
    "properties": {
        "problem": _PROBLEM,
        "quantities": {"type": "object", "required": ["rank"]},
        "consistent": {"type": "boolean"},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["measure", "relation", "value", "real", "anchor", "flag"],
                "properties": {
                    "measure": {"enum": list(MEASURES)},
                    "relation": {"enum": list(RELATIONS)},
                    "value": _RATIONAL,
                    "real": {"type": "number"},
                    "anchor": {"type": "string"},
                    "flag": {"enum": list(FLAGS)},
                    "assumption": {"type": "string"},
                    "condition": {"type": "string"},
                },
                "if": {"properties": {"flag": {"const": "conditional"}}},
                "then": {"required": ["assumption"]},
            },
        },
        "annotations": {
            "type": "array",
            "items": {"type": "object", "required": ["id", "statement", "provenance"]},
        },
    },
}

POLY = {
    "type": "object",
    "required": ["n", "mon", "deg", "terms", "text"],
    "properties": {"n": _NN, "mon": _NN, "deg": _INT, "terms": _TERMS, "text": {"type": "string"}},
}

RANK = {
    "type": "object",
    "required": ["problem", "rank", "distinct_rows"],
    "properties": {"problem": _PROBLEM, "rank": _NN, "distinct_rows": _NN, "mon": _NN},
}

DEXACT = {
    "type": "object",
    "required": ["problem", "lower", "upper", "exact", "d_one_round", "rank"],
    "properties": {"problem": _PROBLEM, "lower": _NN, "upper": _NN, "exact": {"type": "boolean"},
                   "d_one_round": _NN, "rank": _NN},
}

SO = {
    "type": "object",
    "required": ["n", "so", "flag", "witness", "monomial_bound"],
    "properties": {
        "n": _NN, "so": _NN, "flag": {"enum": ["exact", "witnessed"]},
        "witness": {"type": "object", "required": ["x", "blocks"],
                    "properties": {"x": {"type": "string", "pattern": "^[01]*$"},
                                   "blocks": {"type": "array",
                                              "items": {"type": "array", "items": _NN}}}},
        "monomial_bound": _BOUND,
    },
}

APPROX = {
    "type": "object",
    "required": ["what", "eps"],
    "properties": {"what": {"enum": ["degree", "monomials", "rank"]}, "eps": _RATIONAL},
    "oneOf": [
        {"properties": {"what": {"const": "degree"}, "degree": _NN, "polynomial": _APPROX_POLY},
         "required": ["degree", "polynomial"]},
        {"properties": {"what": {"const": "monomials"}, "count": _NN, "exact": {"type": "boolean"},
                        "lp_solves": _NN, "polynomial": _APPROX_POLY, "lower_bound": _BOUND},
         "required": ["count", "exact", "polynomial"]},
        {"properties": {"what": {"const": "rank"}, "target_rank": _NN, "exact_rank": _NN,
                        "success": {"type": "boolean"},
                        "witness": {"type": ["object", "null"],
                                    "required": ["r", "left", "right", "max_dev", "method"]},
                        "lower": {"type": "object", "required": ["value", "method"]}},
         "required": ["target_rank", "exact_rank", "success", "witness", "lower"]},
    ],
}

VERIFY = {
    "type": "object",
    "required": ["suite", "passed", "instances", "counterexamples", "details"],
    "properties": {"suite": {"type": "string"}, "passed": {"type": "boolean"}, "instances": _NN,
                   "counterexamples": {"type": "array", "items": {"type": "object"}},
                   "details": {"type": "object"}},
}

EXPERIMENT = {
    "type": "object",
    "required": ["experiment", "seed", "rows"],
    "properties": {"experiment": {"type": "string"}, "seed": _INT,
                   "rows": {"type": "array", "items": {"type": "object"}}},
}

SCHEMAS = {
    "analyze": ANALYZE, "poly": POLY, "rank": RANK, "dexact": DEXACT, "so": SO,
    "approx": APPROX, "verify": VERIFY, "experiment": EXPERIMENT,
}

__all__ = ["SCHEMAS"]
