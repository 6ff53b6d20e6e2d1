"""Write the bundled diabetes-like fixture (500 seeded rows plus schema, rules, checks, config).

Run from the repository root:

    python3 scripts/make_fixture.py
"""

import csv
import json
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "medsynth" / "data" / "diabetes"
N_ROWS = 500
SEED = 20240611

SCHEMA = {
    "label": "diabetes",
    "columns": [
        {"name": "gender", "kind": "categorical", "description": "Biological sex",
         "quasi_identifier": True, "categories": ["Female", "Male"]},
        {"name": "age", "kind": "numeric", "description": "Age in years", "bounds": [0, 120],
         "quasi_identifier": True, "integer": True},
        {"name": "hypertension", "kind": "binary", "description": "Diagnosed hypertension"},
        {"name": "heart_disease", "kind": "binary", "description": "Diagnosed heart disease"},
        {"name": "smoking_history", "kind": "categorical", "description": "Smoking status"},
        {"name": "bmi", "kind": "numeric", "description": "Body mass index", "bounds": [10, 80]},
        {"name": "HbA1c_level", "kind": "numeric", "description": "Glycated haemoglobin (%)",
         "bounds": [3, 15]},
        {"name": "blood_glucose_level", "kind": "numeric", "description": "Blood glucose (mg/dL)",
         "bounds": [50, 400], "integer": True},
        {"name": "diabetes", "kind": "binary", "description": "Diabetes diagnosis"},
    ],
}

RULES = {
    "provenance": "fixture defaults: diagnostic cut-offs and an age prior",
    "rules": [
        {"id": "r1", "if": [{"field": "HbA1c_level", "op": ">", "value": 6.5}],
         "then": [{"field": "diabetes", "op": "=", "value": 1}], "hard": True},
        {"id": "r2", "if": [{"field": "blood_glucose_level", "op": ">=", "value": 200}],
         "then": [{"field": "diabetes", "op": "=", "value": 1}], "hard": True},
        {"id": "r3", "if": [{"field": "age", "op": "<", "value": 30}],
         "then": [{"field": "heart_disease", "op": "=", "value": 0}], "hard": False},
    ],
}

CHECKS = [
    {"type": "group_mean_gap", "value": "HbA1c_level", "group": "diabetes"},
    {"type": "group_mean_gap", "value": "blood_glucose_level", "group": "diabetes"},
    {"type": "slope_gap", "x": "age", "y": "hypertension"},
    {"type": "cooccurrence_gap", "a": "hypertension", "b": "heart_disease"},
]

CONFIG = {
    "dataset": {"name": "diabetes", "path": "diabetes.csv", "schema": "schema.json",
                "task": "diabetes prediction"},
    "rules": "rules.json",
    "checks": "checks.json",
    "tiers": ["StatGuide", "ClinRule"],
    "backends": [{"name": "mock", "type": "mock"}],
    "k": 200,
    "seed": 7,
    "n_seeds": 3,
    "generation": {"batch_size": 20, "temperature": 0.7, "top_p": 0.9, "retries": 2},
    "thresholds": {"eps_stat": 0.2, "eps_util": 0.1, "delta_priv": 0.5},
    "profile": {"threshold": 5, "cutoff": 0.15, "expert_flagged": [["HbA1c_level", "diabetes"]]},
    "privacy": {"k_anon": 5, "numeric_bins_for_quasi_id": 10, "covariance_ridge": 1e-6},
    "utility": {"classifiers": ["decision_tree", "random_forest", "boosted_trees"], "repeats": 3},
}


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


def make_rows(rng):
    n = N_ROWS
    gender = np.where(rng.random(n) < 0.58, "Female", "Male")
    age = np.round(np.clip(rng.normal(48, 16, n), 18, 80))
    hypertension = (rng.random(n) < sigmoid(-4.2 + 0.05 * age)).astype(int)
    heart = (rng.random(n) < sigmoid(-5.8 + 0.055 * age + 0.6 * hypertension)).astype(int)
    heart[age < 30] = 0
    smoking = rng.choice(["never", "No Info", "former", "current", "not current"], size=n,
                         p=[0.37, 0.31, 0.12, 0.10, 0.10])
    smoking[rng.choice(n, size=3, replace=False)] = "ever"
    bmi = np.round(np.clip(rng.normal(27.5, 5.5, n), 15, 60), 2)
    z = -3.8 + 0.035 * age + 0.09 * (bmi - 27.5) + 0.7 * hypertension + 0.6 * heart
    diabetes = (rng.random(n) < sigmoid(z)).astype(int)
    hba1c = np.where(diabetes == 1, np.clip(rng.normal(6.8, 0.9, n), 4.5, 9.0),
                     np.clip(rng.normal(5.6, 0.55, n), 3.5, 6.5))
    hba1c = np.round(hba1c, 1)
    glucose = np.where(diabetes == 1, np.clip(rng.normal(180, 45, n), 80, 300),
                       np.clip(rng.normal(132, 28, n), 70, 199))
    glucose = np.round(glucose)
    return [
        [gender[i], int(age[i]), hypertension[i], heart[i], smoking[i], f"{bmi[i]:.2f}",
         f"{hba1c[i]:.1f}", int(glucose[i]), diabetes[i]]
        for i in range(n)
    ]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rows = make_rows(np.random.default_rng(SEED))
    with open(OUT / "diabetes.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([c["name"] for c in SCHEMA["columns"]])
        w.writerows(rows)
    for name, doc in (("schema.json", SCHEMA), ("rules.json", RULES), ("checks.json", CHECKS),
                      ("config.json", CONFIG)):
        (OUT / name).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()
