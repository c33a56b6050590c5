from .certificates import InputBlindBranching, Unwritable, incompleteness_certificate
from .fixtures import FixtureInvalid, MissingMapping, TranslationMap, fixture_map, fixture_maps, verify_fixtures
from .rewrite import translate_sequence
from .search import find_witness, search_witnesses
from .solver import Bound, CertifiedIncomplete, UnknownBeyond, strict_bound, strictness_audit
from .sweep import subset_claims_check, sweep_subsets
from .targets import Target, realizes, target_by_code, targets
