"""roadcall: economic-risk engine for on-road maintenance decisions.

Given a fault alarm on a loaded truck mid-delivery, the engine scores three
responses (workshop at reduced speed, workshop at normal speed, customer
first) by their expected economic loss from delivery delay and maintenance
spend, and picks the cheapest one. The experiments module reproduces the
alarm-location sweeps and the sensitivity analyses at desk scale.
"""

from .decisions import BOTH_IMPACTS, DECISION_ORDER, Decision, Impact
from .experiments import (
    EERReport,
    RulSensitivityPoint,
    SweepResult,
    UtilitySensitivityPoint,
    WorkshopComparison,
    alarm_grid,
    eer,
    evenly_spaced_workshops,
    expected_mer,
    rul_sensitivity,
    sweep,
    utility_sensitivity,
    workshop_scenario,
)
from .geometry import (
    RouteGeometry,
    SpeedProfile,
    Workshop,
    time_to_customer,
    time_to_workshop,
    truck_position,
)
from .impacts import (
    ImpactOutcome,
    LossProfile,
    LossSegment,
    MaintenanceParams,
    availability_loss_b,
    availability_loss_nb,
    evaluate_outcome,
    loss_profile,
    maintenance_cost_b,
    maintenance_cost_nb,
)
from .quadrature import QuadratureError, integrate
from .risk import (
    AvailabilityUtility,
    RiskReport,
    choose_decision,
    expected_impact_loss,
    maintenance_utility,
    total_risk,
)
from .rul import GammaParams, GammaRul, fixed_mean_params, reduced_speed_params
from .scenario import (
    QuadratureSettings,
    Scenario,
    ScenarioError,
    list_presets,
    load_scenario,
    save_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "AvailabilityUtility",
    "BOTH_IMPACTS",
    "DECISION_ORDER",
    "Decision",
    "EERReport",
    "GammaParams",
    "GammaRul",
    "Impact",
    "ImpactOutcome",
    "LossProfile",
    "LossSegment",
    "MaintenanceParams",
    "QuadratureError",
    "QuadratureSettings",
    "RiskReport",
    "RouteGeometry",
    "RulSensitivityPoint",
    "Scenario",
    "ScenarioError",
    "SpeedProfile",
    "SweepResult",
    "UtilitySensitivityPoint",
    "Workshop",
    "WorkshopComparison",
    "alarm_grid",
    "availability_loss_b",
    "availability_loss_nb",
    "choose_decision",
    "eer",
    "evaluate_outcome",
    "evenly_spaced_workshops",
    "expected_impact_loss",
    "expected_mer",
    "fixed_mean_params",
    "integrate",
    "list_presets",
    "load_scenario",
    "loss_profile",
    "maintenance_cost_b",
    "maintenance_cost_nb",
    "maintenance_utility",
    "reduced_speed_params",
    "rul_sensitivity",
    "save_scenario",
    "sweep",
    "time_to_customer",
    "time_to_workshop",
    "total_risk",
    "truck_position",
    "utility_sensitivity",
    "workshop_scenario",
]
