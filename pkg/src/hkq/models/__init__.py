"""The worked examples: flat space, Taub-NUT, Atiyah-Hitchin, ADHM data."""

from .flat import (FlatModel, flat_closed_form, flat_dimension_report, flat_fixed_points,
                   flat_multiplicity_ledger, flat_rank_form, gaussian_pairing,
                   gaussian_pairing_mc)
from .taubnut import (TaubNUTModel, TNL2Result, taubnut_coords, taubnut_l2, taubnut_series,
                      taubnut_weight_table)
from .atiyah_hitchin import AHIntegralResult, AHPoint, ah_integral, ah_w, ah_w_bound, ah_wbound_check
from .adhm import (ADHMDatum, ADHMReport, act, adhm_check, hand_datum, hand_datum_k2,
                   random_datum, zero_datum)

__all__ = [
    "FlatModel", "flat_closed_form", "flat_dimension_report", "flat_fixed_points",
    "flat_multiplicity_ledger", "flat_rank_form", "gaussian_pairing", "gaussian_pairing_mc",
    "TaubNUTModel", "TNL2Result", "taubnut_coords", "taubnut_l2", "taubnut_series",
    "taubnut_weight_table",
    "AHIntegralResult", "AHPoint", "ah_integral", "ah_w", "ah_w_bound", "ah_wbound_check",
    "ADHMDatum", "ADHMReport", "act", "adhm_check", "hand_datum", "hand_datum_k2",
    "random_datum", "zero_datum",
]
