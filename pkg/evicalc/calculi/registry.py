from typing import List, Type

from evicalc import exceptions
from evicalc.calculi.certainty import CertaintyFactorMeasure
from evicalc.calculi.evoking import EvokingStrengthMeasure, EvokingThresholds
from evicalc.calculi.likelihood import LikelihoodRatioMeasure, WeightOfEvidenceMeasure
from evicalc.calculi.measure import UpdateMeasure
from evicalc.calculi.posterior import PosteriorMeasure

MEASURES = [
    {
        "name": "lambda",
        "description": "likelihood ratio p(E|He)/p(E|~He); combines by multiplication",
        "measure": LikelihoodRatioMeasure,
    },
    {
        "name": "weight",
        "description": "weight of evidence log lambda; combines by addition",
        "measure": WeightOfEvidenceMeasure,
    },
    {
        "name": "cf",
        "description": "MYCIN certainty factor CF(H,E,e); combines by mycin_combine",
        "measure": CertaintyFactorMeasure,
    },
    {
        "name": "posterior",
        "description": "posterior p(H|Ee) used as if it were an update",
        "measure": PosteriorMeasure,
    },
    {
        "name": "evoking",
        "description": "INTERNIST-1 evoking strength, a bucketed posterior in 0..5",
        "measure": EvokingStrengthMeasure,
    },
]


def measure_names() -> List[str]:
    return [m["name"] for m in MEASURES]


def measure_class(name: str) -> Type[UpdateMeasure]:
    for m in MEASURES:
        if m["name"] == name:
            return m["measure"]
    raise exceptions.MeasureNameError(
        f"No measure named '{name}'. Choose from {', '.join(measure_names())}."
    )


def create_measure(name: str, log_base=None, thresholds=None) -> UpdateMeasure:
    """Instantiates a measure by name; options irrelevant to it are ignored."""
    cls = measure_class(name)
    if cls is WeightOfEvidenceMeasure and log_base is not None:
        return cls(base=log_base)
    if cls is EvokingStrengthMeasure and thresholds is not None:
        if not isinstance(thresholds, EvokingThresholds):
            thresholds = EvokingThresholds.parse(thresholds)
        return cls(thresholds=thresholds)
    return cls()
