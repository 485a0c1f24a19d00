"""Published ratio values for comparison, as five-decimal strings keyed by n.

The exact columns come from full enumeration; the approximate columns are
Monte Carlo estimates (10^4 chains of 10^6 transitions, 2*10^6 at n=31) and
are for side-by-side reporting only, never for pass/fail checks.
"""

EXACT_EG_DAG = {
    2: "0.66667", 3: "0.44000", 4: "0.34070", 5: "0.29992", 6: "0.28238",
    7: "0.27443", 8: "0.27068", 9: "0.26888", 10: "0.26799",
}

EXACT_EDAG_EG = {
    2: "0.50000", 3: "0.36364", 4: "0.31892", 5: "0.29788", 6: "0.28667",
    7: "0.28068", 8: "0.27754", 9: "0.27590", 10: "0.27507",
}

EXACT_CDAG_DAG = {
    2: "0.66667", 3: "0.72000", 4: "0.82136", 5: "0.90263", 6: "0.95115",
    7: "0.97605", 8: "0.98821", 9: "0.99415", 10: "0.99708", 11: "0.99854",
    12: "0.99927", 13: "0.99964", 14: "0.99982", 15: "0.99991", 16: "0.99995",
    17: "0.99998", 18: "0.99999", 19: "0.99999",
}
EXACT_CDAG_DAG.update({n: "1.00000" for n in range(20, 32)})

# (#EGs/#DAGs, #EDAGs/#EGs, #CEGs/#CDAGs, #CEGs/#EGs)
APPROX = {
    2: ("0.67654", "0.49270", "0.51482", "0.50730"),
    3: ("0.44705", "0.35790", "0.39334", "0.63350"),
    4: ("0.33671", "0.32270", "0.32295", "0.78780"),
    5: ("0.29544", "0.30240", "0.29471", "0.90040"),
    6: ("0.28206", "0.28700", "0.28033", "0.94530"),
    7: ("0.27777", "0.27730", "0.27799", "0.97680"),
    8: ("0.26677", "0.28160", "0.26688", "0.98860"),
    9: ("0.27124", "0.27350", "0.27164", "0.99560"),
    10: ("0.26412", "0.27910", "0.26413", "0.99710"),
    11: ("0.26179", "0.28070", "0.26170", "0.99820"),
    12: ("0.26825", "0.27350", "0.26829", "0.99940"),
    13: ("0.27405", "0.26750", "0.27407", "0.99970"),
    14: ("0.27161", "0.26980", "0.27163", "0.99990"),
    15: ("0.26250", "0.27910", "0.26253", "1.00000"),
    16: ("0.26943", "0.27190", "0.26941", "0.99990"),
    17: ("0.26942", "0.27190", "0.26942", "1.00000"),
    18: ("0.27040", "0.27090", "0.27041", "1.00000"),
    19: ("0.27130", "0.27000", "0.27130", "1.00000"),
    20: ("0.26734", "0.27400", "0.26734", "1.00000"),
    21: ("0.26463", "0.27680", "0.26463", "1.00000"),
    22: ("0.27652", "0.26490", "0.27652", "1.00000"),
    23: ("0.26569", "0.27570", "0.26569", "1.00000"),
    24: ("0.27030", "0.27100", "0.27030", "1.00000"),
    25: ("0.26637", "0.27500", "0.26637", "1.00000"),
    26: ("0.26724", "0.27410", "0.26724", "1.00000"),
    27: ("0.26950", "0.27180", "0.26950", "1.00000"),
    28: ("0.27383", "0.26750", "0.27383", "1.00000"),
    29: ("0.27757", "0.26390", "0.27757", "1.00000"),
    30: ("0.28012", "0.26150", "0.28012", "1.00000"),
    31: ("0.27424", "0.26710", "0.27424", "1.00000"),
}
