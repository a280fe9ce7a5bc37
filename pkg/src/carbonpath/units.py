"""Unit conventions and physical conversion constants.

Internal unit policy: emissions in Gton CO2 (rates per year), money in
trillion $ (costs per Gton), temperatures in K, rates in fraction/year.
Carbon taxes cross the package boundary in $/ton CO2.
"""

# kg CO2 per kg C, from molar masses 44.01 / 12.011.
CO2_PER_C = 3.664

# 1 trillion $ / Gton CO2 = 1000 $ / ton CO2.
USD_PER_TON_PER_TRILLION_PER_GTON = 1000.0


def tcre_per_gton_co2(k_per_tton_carbon):
    """Convert a TCRE quoted in K per Tton C to K per Gton CO2."""
    return k_per_tton_carbon * 1e-3 / CO2_PER_C


# Mean transient climate response to cumulative emissions: 1.65 K / Tton C,
# i.e. about 4.503e-4 K / Gton CO2.
DEFAULT_TCRE = tcre_per_gton_co2(1.65)

# Present CO2-induced warming used to anchor historical cumulative emissions.
DEFAULT_PRESENT_WARMING = 1.0
