"""Builtin moduli for 2 <= m <= 12, one primitive polynomial per degree.

Generated by scripts/regen_moduli.py; regenerate with
    python3 scripts/regen_moduli.py
Each entry is monic irreducible over F_3 and the residue of x is a
primitive element, so the power format p:<k> is always available.
"""

BUILTIN_MODULI = {
    2: 't:211',
    3: 't:1201',
    4: 't:21001',
    5: 't:101011',
    6: 't:2100001',
    7: 't:12100001',
    8: 't:200100001',
    9: 't:1012000001',
    10: 't:21010000001',
    11: 't:121000000001',
    12: 't:2221200000001',
}
