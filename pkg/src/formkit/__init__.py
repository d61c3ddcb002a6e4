"""Form-parse evaluation metrics and synthetic form generation."""

from .align_eval import MatchConfig, PRF, align_entities, align_word_sequences, entity_prf, relationship_prf
from .cleanup import CleanupConfig, RepairLog, collapse_repeats, repair_json
from .edit_metrics import TedCosts, levenshtein_norm, nted, ted, ted_bruteforce
from .form_tree import (
    Entity,
    EntityClass,
    LabelTree,
    MalformedParse,
    MissingOrientation,
    ParseTree,
    Table,
    TableOrientation,
    parse_json,
    serialize_json,
    to_label_tree,
    tree_stats,
)
from .ganted import GantedConfig, ganted, ganted_label_trees, greedy_align_pass
from .pools import ContentPools, load_pools
from .reading_order import LayoutElement, ReadOrderConfig, Rect, order_elements
from .synth import FormPage, PageConfig, gen_page, render_svg, sample_number

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
