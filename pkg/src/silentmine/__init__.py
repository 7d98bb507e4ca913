"""Mine silent-mode configuring rules from phone call logs."""
from .applicability import (
    ApplicabilityScore,
    DegenerateInput,
    SweepResult,
    applicability,
    sweep_base_periods,
    sweep_week,
)
from .calllog import (
    Activity,
    CallRecord,
    CallType,
    Dataset,
    Day,
    FatalFormat,
    MalformedRow,
    classify_activity,
    filter_incoming_related,
    parse_log,
    read_log,
    serialize_log,
)
from .evaluation import EmptyDataset, EvalReport, evaluate, threshold_curve
from .merging import UnavailabilityPeriod, merge_dominant_slices, mine_day
from .rulegen import SilentRule, deserialize_rules, generate_rules, mine_rules, serialize_rules
from .slicing import TimeSlice, bin_activities, generate_time_slices, identify_unavail_dominant
from .synthgen import InvalidSpec, PlantedPeriod, SynthSpec, generate

__version__ = "0.1.0"
