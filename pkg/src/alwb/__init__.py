"""Exact decision procedures for Abelian, pointed Abelian and Lukasiewicz
(unbound) logics, with rational counterexample witnesses, a Hilbert proof
checker, finite approximants of infinitary rules, and the translations
between the Lukasiewicz-family logics."""

from .errors import (
    AlwbError, LanguageError, ModelError, ParseError, ScenarioBudgetError,
)
from .formulas import (
    FALSE, TRUE, Consecution, ConstF, ConstT, Formula, Fus, Impl, Join, Meet,
    Var, mentions_f, minus, n_fold_fusion, normalize_variables,
    parse_consecution, parse_formula, print_consecution, print_formula,
    substitute, tilde, variables, vee_form,
)
from .models import (
    IntegerChain, LexZZ, MVUnit, Model, Product, RationalChain,
    build_sd_sequence, check_strongly_decreasing, evaluate, is_designated,
    model_spec, parse_model_spec, refutes, scale_iso, search_counterexample,
)
from .linear import (
    DEFAULT_SCENARIO_BUDGET, Constraint, Feasible, Infeasible, LinearSystem,
    LinearTerm, Scenario, fm_check, fm_eliminate, satisfies, scenario_expand,
    stream_refutation,
)
from .logics import (
    ALIASES, LOGICS, Invalid, LogicId, UnknownUpToBound, Valid, Verdict,
    decide, decide_in_model, get_logic,
)
from .infinitary import (
    ARCH, ARCH_VEE, HAY, IDC, LU, ApproximantInstance, RuleSchema, SCHEMAS,
    approx_decide, instantiate, verify_full_arch_countermodel,
)
from .translations import (
    clip, correspondence_check, tau_flip, tau_luk_to_lu, translate_consecution,
)
from .proofs import (
    AXIOM_SCHEMAS, Accepted, Adj, Ax, Hyp, MP, Proof, ProofStep, Rejected,
    check_proof, load_proof, match_axiom, parse_proof,
)

__version__ = "0.1.0"
