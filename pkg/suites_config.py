# Verification suites run by `main.py verify SUITE`
# Edit this file to change default sweep sizes

SUITES = {
    "example": {
        "max_order": None,
        "description": "Z/2 + Z/4 is weakly-morphic but not morphic",
    },
    "das": {
        "max_order": 64,
        "description": "every finite group is weakly-morphic (exhaustive scalars, closed form and oracle)",
    },
    "das-infinite": {
        "max_order": 16,
        "description": "Z^r + T (1 <= r <= 3) is never weakly-morphic; the witness fails a-morphic",
    },
    "rats-oracle": {
        "max_order": 16,
        "description": "brute-force morphic equals the homogeneous-primary classification",
    },
    "mul-oracle": {
        "max_order": 64,
        "description": "oracle image/kernel/cokernel of multiplication maps equal the closed forms",
    },
    "e5e": {
        "max_order": 64,
        "description": "multiplication-regular implies Ma + Ann(a) = M and a-morphic; Z/4, a=2 is the gap",
    },
    "ftft": {
        "max_order": 64,
        "description": "modules over Z/n, n squarefree <= 30, are weakly-morphic and regular",
    },
    "gtg": {
        "max_order": 100,
        "description": "product ring Z/n1 x Z/n2 predicate equals componentwise and CRT predicates",
    },
    "p51": {
        "max_order": 64,
        "description": "weakly-morphic over Z/n (exponent | n <= 2 exponent) equals over Z",
    },
    "snf": {
        "max_order": None,
        "description": "Smith normal form on random integer matrices",
    },
    "cyclic": {
        "max_order": 200,
        "description": "Z/n is morphic and weakly-morphic for every n",
    },
    "lemma-x": {
        "max_order": 16,
        "description": "exact-sequence witness psi with ker psi = Ma and psi(M) = Ann(a)",
    },
    "summand": {
        "max_order": 16,
        "description": "direct summands of weakly-morphic groups (open question, vacuous when finite)",
    },
}

SQUAREFREE_LIMIT = 30
GTG_COMPONENT_MAX_ORDER = 8
FREE_RANKS = (1, 2, 3)

SNF_SAMPLES = 1000
SNF_MAX_DIM = 6
SNF_MAX_ENTRY = 100
SNF_SEED = 1729


def get_suites_text():
    text = "SUITES:\n"
    width = max(len(name) for name in SUITES)
    for name, info in SUITES.items():
        default = info["max_order"]
        bound = f" (default --max-order {default})" if default else ""
        text += f"- {name.ljust(width)}  {info['description']}{bound}\n"
    return text
