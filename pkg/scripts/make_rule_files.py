"""Regenerate the shipped rule files in src/bblab/data/rules/ from the
plain-text transcriptions below.

    python3 scripts/make_rule_files.py          # write files
    python3 scripts/make_rule_files.py --check  # fail if files are stale
"""

import argparse
import json
import sys
from pathlib import Path

from bblab.rules.text import system_from_text

OUT = Path(__file__).resolve().parents[1] / "src" / "bblab" / "data" / "rules"

SYSTEMS = {
    "tm52_mb_champion": dict(
        description="(5,2) Marxen-Buntrock champion (1990)",
        machine="1RB1LC_1RC1RB_1RD0LE_1LA1LD_1RH0LA",
        families=["C(n) = 0 (A0) 1^n 0"],
        rules=[
            "blank = C(0)",
            "C(3k)   |- 5k^2 + 19k + 15  C(5k + 6)",
            "C(3k+1) |- 5k^2 + 25k + 27  C(5k + 9)",
            "C(3k+2) |- 6k + 12  halt 0 1 (H0) 1 (001)^{k+1} 1 0",
        ],
    ),
    "tm52_mb_runnerup": dict(
        description="(5,2) Marxen-Buntrock runner-up (1990)",
        machine="1RB0LD_1LC1RD_1LA1LC_1RH1RE_1RA0RB",
        families=["C(n) = 0 (A0) 1^n 0"],
        rules=[
            "blank = C(0)",
            "C(3k)   |- 10k^2 + 10k + 4  C(5k + 3)",
            "C(3k+1) |- 3k + 3  halt 0 1 (110)^{k} 1 1 (H0) 0",
            "C(3k+2) |- 10k^2 + 26k + 12  C(5k + 7)",
        ],
    ),
    "tm62_kropitz_2010": dict(
        description="(6,2) Kropitz (May 2010)",
        machine="1RB0LD_1RC0RF_1LC1LA_0LE1RH_1LA0RB_0RC0RE",
        families=["C(n, k) = 0 1 0^{n} 1 (C1) 1^{3k} 0"],
        rules=[
            "init |- 47  C(5, 2)",
            "C(0, k) |- 3  halt 0 1 (H0) 1^{3k+1} 0",
            "C(1, k) |- 3k + 37  C(3k + 2, 2)",
            "C(2, k) |- 12k + 44  C(4, k + 2)",
            "C(3, k) |- 3k + 57  C(3k + 8, 2)",
            "C(n+4, k) |- 27k^2 + 105k + 112  C(n, 3k + 5)",
        ],
    ),
    "tm62_ligocki_dec2007": dict(
        description="(6,2) T. and S. Ligocki (December 2007)",
        machine="1RB0LE_1LC0RA_1LD0RC_1LE0LF_1LA1LC_1LE1RH",
        families=["C(n, p) = 0 (A0) (10)^{n} R(bin(p)) 0"],
        rules=[
            "blank = C(0, 0)",
            "C(n, 4m+1) = C(n + 1, m)",
            "C(k, 4m+3) |- 4k + 6  C(k + 2, m)",
            "C(2k+1, 4m) |- 6k^2 + 52k + 98  C(3k + 8, m)",
            "C(4k, 4m) |- 24k^2 + 36k + 13  C(6k + 2, 2m + 1)",
            "C(4k+2, 4m) |- 24k^2 + 60k + 27  C(6k + 2, 128m + 86)",
            "C(k, 8m+2) |- 4k + 14  C(k + 2, 2m + 1)",
            "C(2k+1, 32m+22) |- 6k^2 + 64k + 160  C(3k + 10, 2m + 1)",
            "C(4k, 32m+22) |- 24k^2 + 36k + 29  C(6k + 4, m)",
            "C(4k+2, 32m+22) |- 24k^2 + 60k + 43  C(6k + 2, 1024m + 342)",
            "C(k, 64m+46) |- 4k + 30  C(k + 4, m)",
            "C(k+1, 128m+6) |- 8k + 66  C(k + 6, 2m + 1)",
            "C(2k, 256m+14) |- 6k^2 + 64k + 172  C(3k + 11, m)",
            "C(4k+1, 256m+14) |- 24k^2 + 84k + 89  C(6k + 8, 2m + 1)",
            "C(4k+3, 256m+14) |- 24k^2 + 108k + 127  C(6k + 8, 128m + 86)",
            "C(4k, 512m+30) |- 24k^2 + 156k + 173  C(6k + 11, m)",
            "C(4k+2, 512m+30) |- 24k^2 + 60k + 57  C(6k + 2, 16384m + 11134)",
            "C(4k+2, 131072m+11134) |- 24k^2 + 60k + 89  C(6k + 2, 4194304m + 2848638)",
            "C(4k, 131072m+96126) |- 24k^2 + 36k + 109  C(6k + 10, m)",
            "C(k+1, 512m+94) |- 2k + 61  halt 0 (10)^{k} 1 (H0) 1110110101 R(bin(m)) 0",
        ],
    ),
    "tm62_ligocki_nov2007": dict(
        description="(6,2) T. and S. Ligocki (November 2007)",
        machine="1RB0RF_0LB1LC_1LD0RC_1LE1RH_1LF0LD_1RA0LE",
        families=["C(n, p) = 0 (F0) (10)^{n} R(bin(p)) 0"],
        rules=[
            "init |- 6  C(0, 15)",
            "C(n, 4m+1) = C(n + 1, m)",
            "C(k, 4m+3) |- 4k + 6  C(k + 2, m)",
            "C(2k, 4m) |- 30k^2 + 20k + 15  C(5k + 2, 2m + 1)",
            "C(2k+1, 4m) |- 30k^2 + 40k + 25  C(5k + 2, 32m + 20)",
            "C(k, 8m+2) |- 8k + 20  C(k + 3, 2m + 1)",
            "C(2k, 16m+6) |- 30k^2 + 40k + 23  C(5k + 2, 32m + 20)",
            "C(2k+1, 16m+6) |- 30k^2 + 80k + 63  C(5k + 7, 2m + 1)",
            "C(k, 32m+14) |- 4k + 18  C(k + 3, 2m + 1)",
            "C(2k, 128m+94) |- 30k^2 + 40k + 39  C(5k + 2, 256m + 84)",
            "C(2k+1, 128m+94) |- 30k^2 + 80k + 79  C(5k + 9, m)",
            "C(k, 256m+190) |- 4k + 34  C(k + 5, m)",
            "C(k, 512m+30) |- 2k + 43  halt 0 (10)^{k} 1 (H0) 10100101 R(bin(m)) 0",
        ],
    ),
    "tm62_mb_mar2001": dict(
        description="(6,2) Marxen-Buntrock (March 2001)",
        machine="1RB0LF_0RC0RD_1LD1RE_0LE0LD_0RA1RC_1LA1RH",
        families=["C(n, p) = 0 (A0) (01)^{n} R(bin(p)) 0"],
        rules=[
            "blank = C(0, 0)",
            "C(n, 4m+2) = C(n + 1, m)",
            "C(2k, 4m) |- 9k^2 + 25k + 9  C(3k + 1, 2m + 1)",
            "C(2k, 16m+1) |- 9k^2 + 25k + 17  C(3k + 2, 2m + 1)",
            "C(2k, 4m+3) |- 9k^2 + 25k + 9  C(3k + 1, 2m)",
            "C(2k, 64m+53) |- 9k^2 + 25k + 25  C(3k + 3, 2m)",
            "C(2k, 256m+9) |- 9k^2 + 25k + 29  C(3k + 4, 2m + 1)",
            "C(2k, 1024m+57) |- 9k^2 + 25k + 33  C(3k + 2, 128m + 104)",
            "C(2k, 1024m+85) |- 9k^2 + 25k + 41  C(3k + 5, 2m + 1)",
            "C(2k+1, 16m) |- 9k^2 + 25k + 21  C(3k + 3, 2m + 1)",
            "C(2k+1, 4m+1) |- 9k^2 + 25k + 13  C(3k + 1, 8m + 4)",
            "C(2k+1, 64m+4) |- 9k^2 + 25k + 29  C(3k + 4, 2m + 1)",
            "C(2k+1, 64m+3) |- 9k^2 + 25k + 25  C(3k + 1, 128m + 104)",
            "C(2k+1, 1024m+104) |- 9k^2 + 43k + 75  C(3k + 7, 2m + 1)",
            "C(2k+1, 16m+12) |- 9k^2 + 25k + 21  C(3k + 3, 2m)",
            "C(2k+1, 16m+7) |- 9k^2 + 25k + 17  C(3k + 1, 32m + 16)",
            "C(2k+1, 256m+15) |- 9k^2 + 25k + 29  C(3k + 1, 512m + 416)",
            "C(2k+1, 64m+52) |- 9k^2 + 25k + 29  C(3k + 4, 2m)",
            "C(2k+1, 256m+20) |- 9k^2 + 25k + 37  C(3k + 5, 2m + 1)",
            "C(2k+1, 4096m+420) |- 9k^2 + 43k + 89  C(3k + 8, 2m + 1)",
            "C(2k+1, 256m+211) |- 9k^2 + 25k + 33  C(3k + 1, 512m + 168)",
            "C(2k+1, 16m+11) |- 9k^2 + 13k + 10  halt 0 (10)^{3k+1} 11 (H0) 10 R(bin(m)) 0",
        ],
    ),
    "tm62_mb_oct2000": dict(
        description="(6,2) Marxen-Buntrock (October 2000); exponential step counts",
        machine="1RB0LB_0RC1LB_1RD0LA_1LE1LF_1LA0LD_1RH1LE",
        families=["C(n) = 0 1^n (B0) 0"],
        rules=[
            "init |- 1  C(1)",
            "C(3k) |- 54*4^(k+1) - 27*2^(k+3) + 26k + 86  C(9*2^(k+1) - 8)",
            "C(3k+1) |- 2048*(4^k - 1)/3 - 3*2^(k+7) + 26k + 792  C(2^(k+5) - 8)",
            "C(3k+2) |- 3k + 8  halt 0 1 (H1) (011)^{k} 0101 0",
        ],
    ),
    "tm62_mb_third": dict(
        description="(6,2) third Marxen-Buntrock machine, binary-tail encoding",
        machine="1RB0LC_1LA1RC_1RA0LD_1LE1LC_1RF1RH_1RA1RE",
        families=["C(n, m) = 0 (E0) 1000 (10)^{n} R(bin(m)) 0"],
        rules=[
            "init |- 18  C(1, 2)",
            "C(n, 4m+1) = C(n + 1, m)",
            "C(2k, 2m) |- 6k^2 + 22k + 15  C(3k + 1, 4m + 2)",
            "C(2k, 32m+3) |- 6k^2 + 34k + 41  C(3k + 4, 4m + 2)",
            "C(2k, 128m+7) |- 6k^2 + 34k + 45  C(3k + 5, 4m + 2)",
            "C(2k, 32m+15) |- 6k^2 + 28k + 25  halt 0 1^{6k+11} (H0) R(bin(m)) 0",
            "C(2k+1, 4m) |- 6k^2 + 34k + 43  C(3k + 4, 2m)",
            "C(2k+1, 32m+2) |- 6k^2 + 22k + 27  C(3k + 4, 4m + 2)",
            "C(2k+1, 8m+6) |- 6k^2 + 22k + 23  C(3k + 4, m)",
            "C(2k+1, 4m+3) |- 6k^2 + 34k + 41  C(3k + 4, 2m)",
        ],
    ),
    "tm62_mb_1997": dict(
        description="(6,2) Marxen-Buntrock (September 1997)",
        machine="1RB1RA_1LC1LB_0RF1LD_1RA0LE_1RH1LF_0LA0LC",
        families=["C(n) = 0 (D0) 1^n 0"],
        rules=[
            "init |- 3  C(2)",
            "C(4k) |- 8k + 6  halt 0 1 (H0) (10)^{2k} 110",
            "C(4k+1) |- 20k^2 + 56k + 30  C(10k + 9)",
            "C(4k+2) |- 20k^2 + 56k + 33  C(10k + 9)",
            "C(4k+3) |- 20k^2 + 68k + 51  C(10k + 12)",
        ],
    ),
    "tm33_ligocki_champion": dict(
        description="(3,3) T. and S. Ligocki champion (November 2007)",
        machine="1RB2LA1LC_0LA2RB1LB_1RH1RA1RC",
        families=["C(n) = 0 (A0) 2^n 0"],
        rules=[
            "init |- 3  C(1)",
            "C(8k+1) |- 112k^2 + 116k + 13  C(14k + 3)",
            "C(8k+2) |- 112k^2 + 144k + 38  C(14k + 7)",
            "C(8k+3) |- 112k^2 + 172k + 54  C(14k + 8)",
            "C(8k+4) |- 112k^2 + 200k + 74  C(14k + 9)",
            "C(8k+5) |- 112k^2 + 228k + 97  halt 0 1 (H1) 2^{14k+9} 0",
            "C(8k+6) |- 112k^2 + 256k + 139  C(14k + 14)",
            "C(8k+7) |- 112k^2 + 284k + 169  C(14k + 15)",
            "C(8k+8) |- 112k^2 + 312k + 203  C(14k + 16)",
        ],
    ),
    "tm33_ligocki_aug2006": dict(
        description="(3,3) T. and S. Ligocki (August 2006)",
        machine="1RB2RC1LA_2LA1RB1RH_2RB2RA1LC",
        # the source analysis writes 12^n for 1^{2n}
        families=["C0(n) = 0 (A0) 1^{2n} 0", "C1(n) = 0 (C0) 1^{2n} 0"],
        rules=[
            "blank = C0(0)",
            "C0(2k) |- 40k^2 + 32k + 5  C1(5k + 1)",
            "C0(2k+1) |- 40k^2 + 82k + 42  halt 0 1^{10k+9} (H0) 0",
            "C1(2k+1) |- 40k^2 + 52k + 19  C1(5k + 3)",
            "C1(2k+2) |- 40k^2 + 92k + 53  C0(5k + 5)",
        ],
    ),
    "tm33_lp_apr2006": dict(
        description="(3,3) Lafitte-Papazian (April 2006)",
        machine="1RB1RH2LC_1LC2RB1LB_1LA2RC2LA",
        families=["C0(n) = 0 (A0) 1^n 0", "C1(n) = 0 (A0) 1^n 21 0"],
        rules=[
            "init |- 16  C0(6)",
            "C0(2k+1) |- 4k + 5  halt 0 1 (H2) 2^{2k} 1 0",
            "C0(2k+2) |- 10k^2 + 27k + 23  C1(5k + 6)",
            "C1(2k) |- 10k^2 + 27k + 18  C1(5k + 5)",
            "C1(2k+1) |- 10k^2 + 51k + 60  C0(5k + 12)",
        ],
    ),
    "tm33_lp_sep2005": dict(
        description="(3,3) Lafitte-Papazian (September 2005)",
        machine="1RB2LA1RA_1RC2RB0RC_1LA1RH1LA",
        families=["C0(n) = 0 (A0) 2^n 0", "C1(n) = 0 (A0) 2^n 1 0"],
        rules=[
            "blank = C0(0)",
            "C0(4k) |- 14k^2 + 16k + 5  C1(7k + 2)",
            "C0(4k+1) |- 14k^2 + 30k + 15  C0(7k + 5)",
            "C0(4k+2) |- 14k^2 + 30k + 15  C0(7k + 5)",
            "C0(4k+3) |- 14k^2 + 44k + 35  C1(7k + 9)",
            "C1(2k+1) |- 4k + 3  halt 0 1 (12)^{k} 0 1 (H0) 0",
            "C1(4k) |- 14k^2 + 26k + 11  C0(7k + 4)",
            "C1(4k+2) |- 14k^2 + 40k + 29  C1(7k + 8)",
        ],
    ),
    "tm33_lp_aug2005": dict(
        description="(3,3) Lafitte-Papazian (August 2005)",
        machine="1RB1RH2RB_1LC0LB1RA_1RA2LC1RC",
        families=["C0(n) = 0 (C0) 2^n 0", "C1(n) = 0 (C0) 2^n 1 0"],
        rules=[
            "init |- 3  C1(1)",
            "C0(4k) |- 14k^2 + 16k + 5  C1(7k + 2)",
            "C0(4k+1) |- 14k^2 + 22k + 7  C0(7k + 3)",
            "C0(4k+2) |- 14k^2 + 30k + 15  C0(7k + 5)",
            "C0(4k+3) |- 14k^2 + 36k + 23  C1(7k + 7)",
            "C1(2k) |- 2k + 2  halt 0 1 (21)^{k} 1 (H0) 0",
            "C1(4k+1) |- 14k^2 + 20k + 9  C1(7k + 3)",
            "C1(4k+3) |- 14k^2 + 34k + 21  C0(7k + 6)",
        ],
    ),
    "tm33_souris_s": dict(
        description="(3,3) Souris, S record holder (July 2005)",
        machine="1RB1LB2LA_1LA1RC1RH_0LA2RC1LC",
        families=["C0(n) = 0 (A0) 1^n 0", "C1(n) = 0 (A0) 1^n 2 0"],
        rules=[
            "init |- 4  C0(3)",
            "C0(3k+2) |- 21k^2 + 43k + 19  halt 0 11 (H2) 2^{7k+1} 0",
            "C0(3k+3) |- 21k^2 + 43k + 24  C0(7k + 7)",
            "C0(3k+4) |- 21k^2 + 43k + 26  C1(7k + 7)",
            "C1(3k+1) |- 21k^2 + 61k + 35  halt 0 11 (H2) 2^{7k+3} 0",
            "C1(3k+2) |- 21k^2 + 61k + 42  C0(7k + 9)",
            "C1(3k+3) |- 21k^2 + 61k + 46  C1(7k + 9)",
        ],
    ),
    "tm33_souris_sigma": dict(
        description="(3,3) Souris, Sigma record holder (July 2005)",
        machine="1RB2RA2RC_1LC1RH1LA_1RA2LB1LC",
        families=["C0(n) = 0 (C0) 1^n 0", "C1(n) = 0 (C0) 1^n 21 0"],
        rules=[
            "init |- 4  C1(1)",
            "C0(2k+2) |- 5k^2 + 32k + 17  C0(5k + 5)",
            "C0(2k+3) |- 5k^2 + 32k + 21  C1(5k + 4)",
            "C1(2k+1) |- 5k^2 + 32k + 15  C0(5k + 4)",
            "C1(2k+2) |- 5k^2 + 37k + 30  halt 0 1 2^{5k+5} 1 (H2) 1 0",
        ],
    ),
    "tm33_brady": dict(
        description="(3,3) Brady (December 2004)",
        machine="1RB1RH2LC_1LC2RB1LB_1LA0RB2LA",
        families=["C0(n) = 0 (A0) 1^n 0", "C1(n) = 0 (A0) 1^n 21 0"],
        rules=[
            "init |- 6  C1(0)",
            "C0(2k+1) |- 4k + 5  halt 0 1 (H2) 2^{2k} 1 0",
            "C0(2k+2) |- 10k^2 + 15k + 10  C1(5k + 3)",
            "C1(2k) |- 10k^2 + 27k + 18  C1(5k + 5)",
            "C1(2k+1) |- 10k^2 + 51k + 60  C0(5k + 12)",
        ],
    ),
    "tm24_ligocki_champion": dict(
        description="(2,4) T. and S. Ligocki champion (February 2005)",
        machine="1RB2LA1RA1RA_1LB1LA3RB1RH",
        families=["C1(n) = 0 (A0) 2^n 1 0", "C2(n) = 0 (A0) 2^n 11 0"],
        rules=[
            "init |- 6  C2(1)",
            "C1(3k) |- 15k^2 + 9k + 3  C1(5k + 1)",
            "C1(3k+1) |- 15k^2 + 24k + 13  halt 0 1 3^{5k+2} 1 (H1) 0",
            "C1(3k+2) |- 15k^2 + 29k + 17  C2(5k + 4)",
            "C2(3k) |- 15k^2 + 11k + 3  C2(5k + 1)",
            "C2(3k+1) |- 15k^2 + 21k + 7  C1(5k + 3)",
            "C2(3k+2) |- 15k^2 + 36k + 23  halt 0 1 3^{5k+4} 1 (H1) 0",
        ],
    ),
    "tm24_brady": dict(
        description="(2,4) Brady runner-up (1988)",
        machine="1RB3LA1LA1RA_2LA1RH3RA3RB",
        families=["C0(n) = 0 (A0) 3^n 0", "C1(n) = 0 (A0) 3^n 2 0"],
        rules=[
            "blank = C0(0)",
            "C0(3k) |- 15k^2 + 7k + 3  C1(5k + 1)",
            # exponent corrected from 5k+1 by simulation
            "C0(3k+1) |- 15k^2 + 22k + 11  halt 0 1 3^{5k+2} 1 (H0) 0",
            "C0(3k+2) |- 15k^2 + 27k + 13  C0(5k + 4)",
            "C1(3k) |- 15k^2 + 28k + 16  halt 0 1 3^{5k+3} 1 (H0) 0",
            "C1(3k+1) |- 15k^2 + 33k + 19  C0(5k + 5)",
            "C1(3k+2) |- 15k^2 + 43k + 33  C1(5k + 7)",
        ],
    ),
    "tm25_ligocki_champion": dict(
        description="(2,5) T. and S. Ligocki champion (November 2007)",
        machine="1RB2LA1RA2LB2LA_0LA2RB3RB4RA1RH",
        families=[
            "C1(n) = 0 1 3^n (B0) 0",
            "C2(n) = 0 2 3^n (B0) 0",
            "C3(n) = 0 3^n (B0) 0",
            "C4(n) = 0 411 3^n (B0) 0",
            "C5(n) = 0 412 3^n (B0) 0",
            "C6(n) = 0 41 3^n (B0) 0",
            "C7(n) = 0 42 3^n (B0) 0",
            "C8(n) = 0 4 3^n (B0) 0",
        ],
        rules=[
            "init |- 1  C1(0)",
            "C1(2k) |- 3k^2 + 8k + 4  C1(3k + 1)",
            "C1(2k+1) |- 3k^2 + 8k + 4  C2(3k + 1)",
            "C2(2k) |- 3k^2 + 14k + 9  C1(3k + 2)",
            "C2(2k+1) |- 3k^2 + 8k + 4  C3(3k + 2)",
            "C3(2k) |- 3k^2 + 8k + 2  C1(3k)",
            "C3(2k+1) |- 3k^2 + 8k + 22  C4(3k + 1)",
            "C4(2k) |- 3k^2 + 8k + 8  C1(3k + 3)",
            "C4(2k+1) |- 3k^2 + 8k + 4  C5(3k + 1)",
            "C5(2k) |- 3k^2 + 14k + 13  C1(3k + 4)",
            "C5(2k+1) |- 3k^2 + 8k + 4  C6(3k + 2)",
            "C6(2k) |- 3k^2 + 8k + 6  C1(3k + 2)",
            "C6(2k+1) |- 3k^2 + 8k + 4  C7(3k + 1)",
            "C7(2k) |- 3k^2 + 14k + 11  C1(3k + 3)",
            "C7(2k+1) |- 3k^2 + 8k + 4  C8(3k + 2)",
            "C8(2k) |- 3k^2 + 8k + 4  C1(3k + 1)",
            "C8(2k+1) |- 3k^2 + 5k + 3  halt 0 1 (H2) 2^{3k} 0",
        ],
    ),
    "tm25_ligocki_aug2006": dict(
        description="(2,5) T. and S. Ligocki (August 2006)",
        machine="1RB0RB4RA2LB2LA_2LA1LB3RB4RA1RH",
        families=[
            "C1(n) = 0 3^n (B0) 0",
            "C2(n) = 0 1 3^n (B0) 0",
            "C3(n) = 0 140 3^n (B0) 0",
            "C4(n) = 0 141 3^n (B0) 0",
        ],
        rules=[
            "init |- 1  C2(0)",
            "C1(2k) |- 5k^2 + 14k + 3  C2(5k + 1)",
            "C1(2k+1) |- 5k^2 + 14k + 7  C2(5k + 3)",
            "C2(2k) |- 5k^2 + 14k + 3  C1(5k + 1)",
            "C2(2k+1) |- 5k^2 + 14k + 11  C3(5k + 2)",
            "C3(2k) |- 5k^2 + 14k + 3  C4(5k + 1)",
            "C3(2k+1) |- 5k^2 + 14k + 9  C1(5k + 4)",
            "C4(2k) |- 5k^2 + 14k + 3  C3(5k + 1)",
            "C4(2k+1) |- 5k^2 + 9k + 4  halt 0 11 (H1) 2^{5k+2} 0",
        ],
    ),
    "tm25_lp_jun2006": dict(
        description="(2,5) Lafitte-Papazian (June 2006)",
        machine="1RB3LB4LB4LA2RA_2LA1RH3RB4RA3RB",
        families=[
            "C1(n) = 0 13 2^n 33 (B0) 0",
            "C2(n) = 0 134 2^n 33 (B0) 0",
            "C3(n) = 0 14 2^n 33 (B0) 0",
            "C4(n) = 0 1 2^n 33 (B0) 0",
        ],
        rules=[
            "init |- 10  C1(0)",
            "C1(2k) |- 3k^2 + 12k + 15  C2(3k + 2)",
            "C1(2k+1) |- 3k^2 + 12k + 11  C3(3k + 2)",
            "C2(2k) |- 3k^2 + 12k + 9  C1(3k + 2)",
            "C2(2k+1) |- 3k^2 + 18k + 30  C2(3k + 5)",
            "C3(2k) |- 3k^2 + 12k + 9  C4(3k + 2)",
            "C3(2k+1) |- 3k^2 + 18k + 28  C2(3k + 4)",
            "C4(2k) |- 3k^2 + 12k + 13  C2(3k + 1)",
            "C4(2k+1) |- 3k^2 + 9k + 5  halt 0 1 (H4) 4^{3k+2} 2 0",
        ],
    ),
    "tm25_lp_may2006": dict(
        description="(2,5) Lafitte-Papazian (May 2006)",
        machine="1RB3RA4LB2RA3LA_2LA1RH4RB4RB2LB",
        families=["C1(n) = 0 1 4^n (B0) 0", "C2(n) = 0 3 4^n (B0) 0"],
        rules=[
            "init |- 1  C1(0)",
            "C1(3k) |- 4k^2 + 17k + 11  C1(4k + 3)",
            "C1(3k+1) |- 4k^2 + 25k + 20  C1(4k + 4)",
            "C1(3k+2) |- 4k^2 + 17k + 13  C2(4k + 3)",
            "C2(3k) |- 4k^2 + 17k + 11  C1(4k + 3)",
            "C2(3k+1) |- 4k^2 + 25k + 20  C1(4k + 4)",
            "C2(3k+2) |- 4k^2 + 21k + 24  halt 0 1 (H2) 2 3^{4k+3} 2 0",
        ],
    ),
    "tm25_lp_dec2005": dict(
        description="(2,5) Lafitte-Papazian (December 2005)",
        machine="1RB3RA1LA1LB3LB_2LA4LB3RA2RB1RH",
        families=["C1(n) = 0 1 2^n (B0) 0", "C2(n) = 0 3 2^n (B0) 0"],
        rules=[
            "init |- 69  C1(8)",
            "C1(2k+1) |- 15k^2 + 37k + 31  halt 0 1221 (H1) 1^{5k+1} 2 0",
            "C1(2k+2) |- 15k^2 + 32k + 19  C2(5k + 3)",
            "C2(2k) |- 15k^2 + 32k + 19  C1(5k + 3)",
            "C2(2k+1) |- 15k^2 + 62k + 70  C1(5k + 9)",
        ],
    ),
    "tm25_lp_oct2005": dict(
        description="(2,5) Lafitte-Papazian (October 2005)",
        machine="1RB3LB1RH1LA1LA_2LA3RB4LB4LB3RA",
        families=["C1(n) = 0 (A0) 1^n 2 0", "C2(n) = 0 (A0) 1^n 4 0", "C3(n) = 0 (A0) 1^n 32 0"],
        rules=[
            "init |- 11  C1(3)",
            "C1(2k+1) |- 5k^2 + 28k + 26  C1(5k + 6)",
            "C1(2k+2) |- 5k^2 + 18k + 11  C2(5k + 3)",
            "C2(2k) |- 5k^2 + 18k + 11  C1(5k + 3)",
            "C2(2k+1) |- 5k^2 + 18k + 13  C3(5k + 3)",
            "C3(2k+1) |- 5k^2 + 18k + 9  C1(5k + 3)",
            "C3(2k+2) |- 5k^2 + 23k + 17  halt 0 1 3^{5k+4} 1 (H0) 0",
        ],
    ),
    "collatz_T": dict(
        description="T(2m) = m, T(2m+1) = 3m + 2 as a pure numeric map",
        machine=None,
        families=["T(x) = (A0)"],
        rules=[
            "T(2m) |- 1  T(m)",
            "T(2m+1) |- 1  T(3m + 2)",
        ],
    ),
}


def build(name: str) -> dict:
    spec = SYSTEMS[name]
    sys_ = system_from_text(name, spec["families"], spec["rules"], spec["machine"],
                            spec["description"])
    return sys_.to_json()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="only compare with the files on disk")
    args = ap.parse_args(argv)
    OUT.mkdir(parents=True, exist_ok=True)
    stale = []
    for name in SYSTEMS:
        text = json.dumps(build(name), indent=1) + "\n"
        path = OUT / f"{name}.json"
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(path.name)
        else:
            path.write_text(text)
    if stale:
        print("stale rule files:", ", ".join(stale))
        return 1
    print(f"{len(SYSTEMS)} rule files {'up to date' if args.check else 'written'} in {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
