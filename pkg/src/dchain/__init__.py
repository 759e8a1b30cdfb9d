"""A proof checker for deductive chains over a small dependent type theory."""

from .chain import Chain, ChainError, ChainResult, Closing, Link, LinkKind, classify, compose_equivalences, verify_chain, verify_link
from .kernel import DEFAULT_FUEL, Fuel, FuelExhausted, KernelError, check, check_context, def_eq, elaborate, infer, normalize
from .surface import ParseError, parse_file, parse_term, print_term
from .syntax import Context, Entry, Environment, Term, alpha_eq, shift, substitute

__version__ = "0.1.0"
