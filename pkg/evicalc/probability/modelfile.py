"""
Model files are UTF-8 JSON documents of one of the shapes

    {"hypothesis": "H", "evidence": ["E1", "E2"], "table": [...] | {...}}
    {"hypothesis": "H", "naive_bayes": {"prior": 0.01, "findings": [
        {"name": "E1", "p_given_h": 0.99, "p_given_not_h": 0.01}]}}
    {"models": [<either of the above>, ...]}

A table list is in canonical order (see ``evicalc.probability.joint``); a
table mapping is keyed by complete assignments such as ``"H,E1,~E2"``.
"""

import json
from typing import Dict, Union

from evicalc import exceptions
from evicalc.probability.joint import (
    JointDistribution,
    Schema,
    describe,
    joint_from_table,
)
from evicalc.probability.naivebayes import (
    Finding,
    NaiveBayesModel,
    joint_from_naive_bayes,
)

Model = Union[JointDistribution, NaiveBayesModel]


def model_from_dict(data: dict) -> Model:
    if not isinstance(data, dict):
        raise exceptions.ModelFileError("A model must be a JSON object.")
    hypothesis = data.get("hypothesis", "H")
    try:
        if "naive_bayes" in data:
            nb = data["naive_bayes"]
            findings = tuple(
                Finding(f["name"], f["p_given_h"], f["p_given_not_h"])
                for f in nb.get("findings", [])
            )
            return NaiveBayesModel(nb["prior"], findings, hypothesis)
        if "table" in data:
            table = data["table"]
            if "evidence" in data:
                evidence = tuple(data["evidence"])
            elif isinstance(table, dict):
                evidence = _evidence_from_keys(hypothesis, table)
            else:
                raise exceptions.ModelFileError(
                    "A table given as a list needs an 'evidence' list."
                )
            return joint_from_table(Schema(hypothesis, evidence), table)
    except (KeyError, TypeError, AttributeError, ValueError) as err:
        raise exceptions.ModelFileError(f"Malformed model: missing or invalid {err}.") from err
    raise exceptions.ModelFileError("A model needs either 'table' or 'naive_bayes'.")


def _evidence_from_keys(hypothesis, table):
    first = next(iter(table), "")
    names = [part.strip().lstrip("~¬!").strip() for part in first.split(",")]
    return tuple(name for name in names if name and name != hypothesis)


def as_joint(model: Model) -> JointDistribution:
    if isinstance(model, NaiveBayesModel):
        return joint_from_naive_bayes(model)
    return model


def model_to_dict(model: Model) -> dict:
    if isinstance(model, NaiveBayesModel):
        return {
            "hypothesis": model.hypothesis,
            "naive_bayes": {
                "prior": model.prior,
                "findings": [
                    {
                        "name": f.name,
                        "p_given_h": f.p_given_h,
                        "p_given_not_h": f.p_given_not_h,
                    }
                    for f in model.findings
                ],
            },
        }
    return describe(model)


def load_models(path) -> Dict[str, Model]:
    """
    Reads a model file.

    Args:
        path (str): Path of the model file.

    Returns:
        (dict): Models keyed by hypothesis name, in file order.

    Raises:
        ModelFileError: The file is not valid JSON or not a model document.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as err:
        raise exceptions.ModelFileError(f"{path} is not valid JSON: {err}") from err
    except UnicodeDecodeError as err:
        raise exceptions.ModelFileError(f"{path} is not UTF-8: {err}") from err
    entries = data.get("models") if isinstance(data, dict) and "models" in data else [data]
    if not isinstance(entries, list) or not entries:
        raise exceptions.ModelFileError(f"{path} contains no models.")
    models = {}
    for entry in entries:
        model = model_from_dict(entry)
        name = model.hypothesis if isinstance(model, NaiveBayesModel) else model.schema.hypothesis
        if name in models:
            raise exceptions.ModelFileError(f"{path} defines hypothesis '{name}' twice.")
        models[name] = model
    return models


def load_model(path) -> Model:
    """Reads a model file holding exactly one model."""
    models = load_models(path)
    if len(models) != 1:
        raise exceptions.ModelFileError(
            f"{path} holds {len(models)} models where exactly one was expected."
        )
    return next(iter(models.values()))


def dump_model(path, model: Model):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model_to_dict(model), f, indent=2)
        f.write("\n")
