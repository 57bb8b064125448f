"""List-decodable insertion/deletion codes: Bukh-Ma families, alignment tools and experiments."""
from .errors import DomainError, OuterListOverflow
from .seqcore import Seq, bias, count, freq_vector
from .align import (Matching, BudgetWeights, lcs, lcs_length, advantage, adv_of_matching, advantage_periodic,
                    qary_adv_of_matching, qary_advantage, qary_advantage_periodic, min_edit_budget)
from .bukhma import BukhMaCode, alternating_prefix, build_code, inner_list_decode
from .region import Region, region_vertices, boundary_line, contains, adversary_single, adversary_timeshare
from .channel import EditOp, EditScript, apply_script, random_script, script_cost
from .concat import (ConcatParams, OuterCodeContract, substitute_outer, concat_encode, concat_decode,
                     window_width, qary_window_width)
from .analysis import (martingale_trace, classify_blocks, f_max, nonpositivity_lhs, three_valued_var_bound)

__version__ = "0.1.0"
