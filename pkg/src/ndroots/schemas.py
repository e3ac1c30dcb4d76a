"""JSON Schemas (draft 2020-12) for every report the CLI emits."""

RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
NULLABLE_RATIONAL = {"anyOf": [RATIONAL, {"type": "null"}]}
INDEX_LIST = {"type": "array", "items": {"type": "integer", "minimum": 1}}
EXPS = {"type": "array", "items": {"type": "integer", "minimum": 0}}

POLYNOMIAL = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["coeff", "exps"],
        "properties": {"coeff": RATIONAL, "exps": EXPS},
        "additionalProperties": False,
    },
}

OPERATOR = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["coeff", "x", "d", "s"],
        "properties": {"coeff": RATIONAL, "x": EXPS, "d": EXPS, "s": {"type": "integer", "minimum": 0}},
        "additionalProperties": False,
    },
}

FS_ELEMENT = {
    "type": "object",
    "required": ["numerator", "f_power"],
    "properties": {
        "numerator": {"type": "array", "items": POLYNOMIAL},
        "f_power": {"type": "integer", "minimum": 0},
    },
}

_BASE = {"schema": {"const": 1}, "command": {"type": "string"}}


def _report(required, properties):
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["schema", "command", *required],
        "properties": {**_BASE, **properties},
    }


DENSE_EDGE = {
    "type": "object",
    "required": ["support", "dim", "sum_mult", "r_value"],
    "properties": {
        "support": INDEX_LIST,
        "dim": {"type": "integer", "minimum": 1},
        "sum_mult": {"type": "integer", "minimum": 1},
        "r_value": RATIONAL,
    },
}

ANALYSIS = _report(
    ["indecomposable", "dense_edges", "condition_R", "epsilon", "epsilon_perturbed",
     "mu", "N", "residues", "verdict"],
    {
        "indecomposable": {"type": "boolean"},
        "dense_edges": {"type": "array", "items": DENSE_EDGE},
        "condition_R": {
            "type": "object",
            "required": ["pass", "violators"],
            "properties": {"pass": {"type": "boolean"}, "violators": {"type": "array", "items": DENSE_EDGE}},
        },
        "epsilon": {"anyOf": [{"type": "array", "items": RATIONAL}, {"type": "null"}]},
        "epsilon_perturbed": {"anyOf": [{"type": "array", "items": RATIONAL}, {"type": "null"}]},
        "mu": {"anyOf": [{"type": "array", "items": {
            "type": "object", "required": ["support", "mu"],
            "properties": {"support": INDEX_LIST, "mu": {"type": "integer", "minimum": 1}}}},
            {"type": "null"}]},
        "N": {"anyOf": [{"type": "integer", "minimum": 1}, {"type": "null"}]},
        "residues": {"anyOf": [{"type": "array", "items": {
            "type": "object", "required": ["support", "residue"],
            "properties": {"support": INDEX_LIST, "residue": RATIONAL}}}, {"type": "null"}]},
        "root": NULLABLE_RATIONAL,
        "verdict": {"type": "string"},
    },
)

NORMALIZE = _report(
    ["operator", "terms", "graded_parts"],
    {
        "operator": {"type": "string"},
        "terms": OPERATOR,
        "graded_parts": {"type": "object", "additionalProperties": {"type": "string"}},
    },
)

IDEAL = _report(
    ["operator", "in_ideal", "grades", "failures"],
    {
        "operator": {"type": "string"},
        "in_ideal": {"type": "boolean"},
        "grades": {"type": "array", "items": {"type": "integer"}},
        "failures": {"type": "array", "items": {
            "type": "object", "required": ["k", "gamma", "s_power", "sum"],
            "properties": {"k": {"type": "integer"}, "gamma": EXPS,
                           "s_power": {"type": "integer"}, "sum": RATIONAL}}},
        "sigma": NULLABLE_RATIONAL,
    },
)

ANNIHILATOR = _report(
    ["f", "operator", "annihilator", "result", "sigma", "criterion"],
    {
        "f": {"type": "string"},
        "operator": {"type": "string"},
        "annihilator": {"type": "boolean"},
        "result": FS_ELEMENT,
        "sigma": NULLABLE_RATIONAL,
        "criterion": {"type": "string"},
    },
)

BS_CHECK = _report(
    ["f", "operator", "b", "pass", "residual"],
    {
        "f": {"type": "string"},
        "operator": {"type": "string"},
        "b": {"type": "string"},
        "pass": {"type": "boolean"},
        "residual": FS_ELEMENT,
        "residual_text": {"type": "string"},
    },
)

FS_APPLY = _report(
    ["f", "operator", "result", "text"],
    {"f": {"type": "string"}, "operator": {"type": "string"}, "result": FS_ELEMENT, "text": {"type": "string"}},
)

EULER_WITNESS = _report(
    ["f", "verified", "n", "d", "n_over_d", "candidate_root"],
    {
        "f": {"type": "string"},
        "verified": {"type": "boolean"},
        "n": {"type": "integer"},
        "d": {"type": "integer"},
        "n_over_d": RATIONAL,
        "candidate_root": RATIONAL,
    },
)

SPLIT = {
    "type": "object",
    "required": ["S", "k", "balanced", "coefficients", "c", "verified"],
    "properties": {
        "S": INDEX_LIST,
        "k": {"type": "integer", "minimum": 0},
        "balanced": {"type": "boolean"},
        "coefficients": {"anyOf": [{"type": "array", "items": RATIONAL}, {"type": "null"}]},
        "c": {"anyOf": [{"type": "array", "items": RATIONAL}, {"type": "null"}]},
        "verified": {"type": ["boolean", "null"]},
    },
}

HOMOG_SCREEN = _report(
    ["f", "euler_relation", "splits", "separable", "screen_verdict"],
    {
        "f": {"type": "string"},
        "euler_relation": {
            "type": "object",
            "required": ["feasible", "c", "verified", "certificate"],
            "properties": {
                "feasible": {"type": "boolean"},
                "c": {"anyOf": [{"type": "array", "items": RATIONAL}, {"type": "null"}]},
                "verified": {"type": "boolean"},
            },
        },
        "splits": {"type": "array", "items": SPLIT},
        "witnesses": {"type": "array", "items": INDEX_LIST},
        "separable": {"type": "array", "items": {
            "type": "object", "required": ["S", "separable", "rank"],
            "properties": {"S": INDEX_LIST, "separable": {"type": "boolean"},
                           "rank": {"type": "integer"}}}},
        "screen_verdict": {"type": "string"},
        "note": {"type": "string"},
    },
)

LATTICE = _report(
    ["char_poly", "chi_projective", "predicted_top_betti", "nbc_counts", "aomoto"],
    {
        "char_poly": {"type": "array", "items": {"type": "integer"}},
        "char_poly_text": {"type": "string"},
        "chi_projective": {"type": ["integer", "null"]},
        "predicted_top_betti": {"type": ["integer", "null"]},
        "nbc_counts": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "aomoto": {"anyOf": [{"type": "null"}, {
            "type": "object", "required": ["lambda", "betti"],
            "properties": {"lambda": {"type": "array", "items": RATIONAL},
                           "betti": {"type": "array", "items": {"type": "integer", "minimum": 0}}}}]},
    },
)

SELFTEST = _report(
    ["passed", "checks"],
    {
        "passed": {"type": "boolean"},
        "checks": {"type": "array", "items": {
            "type": "object", "required": ["name", "passed", "cases"],
            "properties": {"name": {"type": "string"}, "passed": {"type": "boolean"},
                           "cases": {"type": "integer"}, "detail": {"type": "string"}}}},
    },
)

BY_COMMAND = {
    "analyze-arrangement": ANALYSIS,
    "weyl-normalize": NORMALIZE,
    "ideal-check": IDEAL,
    "annihilator-check": ANNIHILATOR,
    "bs-check": BS_CHECK,
    "fs-apply": FS_APPLY,
    "euler-witness": EULER_WITNESS,
    "homog-screen": HOMOG_SCREEN,
    "lattice": LATTICE,
    "selftest": SELFTEST,
}
