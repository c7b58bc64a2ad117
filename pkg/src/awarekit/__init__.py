"""Epistemic models with unawareness: two interchangeable model families,
three-valued model checking, structural validators, transforms between the
families, and a proof checker for the logic of propositional awareness."""

from .awareness import (
    AwarenessCategory,
    AwarenessModel,
    BoundedMorphism,
    build_category,
    category_equivalence_suite,
    check_bounded_morphism,
    fh_extension,
    fh_satisfies,
    validate_category,
    validate_fh,
)
from .enumeration import EnumConfig, enumerate_formulas
from .gen import GenCaps, gen_fh, gen_hms, gen_implicit, random_formula
from .implicit import (
    ComplementedModel,
    ImplicitModel,
    a_star_op,
    a_star_property_suite,
    candidate_lambda_from_pi,
    derive_pi_star,
    implicit_from_complemented,
    implicit_property_suite,
    l_op,
    l_star_op,
    validate_alpha,
    validate_implicit,
    validate_lambda,
)
from .lpa import (
    ProofLine,
    ProofVerdict,
    SCHEMA_NAMES,
    check_proof,
    fuzz_soundness,
    match_schema,
    skeleton_tautology,
)
from .modelio import load_model, load_proof, model_to_data, data_to_model, save_model
from .reports import Report, Violation
from .semantics import (
    TruthValue,
    definedness_event,
    extension,
    is_defined,
    satisfies,
    valid_in_model,
)
from .syntax import Formula, atoms, modal_depth, parse, render
from .transforms import (
    category_to_implicit,
    equivalence_check,
    fh_star_transform,
    fh_transform,
    hms_transform,
    round_trip_check,
)
from .unawareness import (
    Event,
    SpaceLattice,
    StateRef,
    SuiteConfig,
    UnawarenessModel,
    ValidationConfig,
    a_op,
    event_algebra,
    event_basis,
    explicit_property_suite,
    k_op,
    pi_space,
    project_state,
    space_key,
    u_op,
    up_closure,
    validate_hms,
)

__version__ = "0.1.0"
