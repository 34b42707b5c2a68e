"""Shipped reference tables for dimensions beyond desk scale.

Counts here are reference data, not recomputation targets: the dimension-6
and -7 values took cluster-scale CPU time to produce.  What the package
does verify is their internal consistency: the set/function sum identity,
mod-3 zeros, the minimal-size head, the gap window and the maximal-class
tail.  Dimension <= 5 rows double as the expected values for the live
enumeration engines.

`NPRIME[7]` is a lower bound only (flagged in NPRIME_EXACT).
"""

from __future__ import annotations

# number of line-sum-zero {-1,0,+1} functions (zero function included)
N_FUNCTIONS = {
    0: 3,
    1: 7,
    2: 31,
    3: 403,
    4: 29875,
    5: 32184151,
    6: 1488159817231,
    7: 6171914027409468739,
}

# number of equivalence classes of such functions
NPRIME = {
    0: 2,
    1: 2,
    2: 3,
    3: 5,
    4: 13,
    5: 92,
    6: 25493,
    7: 2187260868,
}
NPRIME_EXACT = {0: True, 1: True, 2: True, 3: True, 4: True, 5: True,
                6: True, 7: False}  # 7: lower bound only

# mean half-cardinality (leg size) of a nonempty bitrade, with population
# standard deviation, as published
HALF_CARDINALITY_STATS = {
    1: (1.0, 0.0),
    2: (2.4, 0.490),
    3: (6.448, 1.188),
    4: (17.960, 2.342),
    5: (50.527, 4.776),
    6: (142.25, 10.07),
    7: (398.17, 22.59),
}

# bitrade set counts at sizes 2^n, 2^n+2, ..., 2*3^(n-1)

_SPECTRUM_1 = [
    3,
]

_SPECTRUM_2 = [
    9, 6,
]

_SPECTRUM_3 = [
    27, 0, 54, 108, 0, 12,
]

_SPECTRUM_4 = [
    81, 0, 0, 0, 324, 0, 1296, 648, 0, 3888, 2844, 0, 4536, 1296, 0, 0, 0,
    0, 0, 24,
]

_SPECTRUM_5 = [
    243, 0, 0, 0, 0, 0, 0, 0, 1620, 0, 0, 0, 9720, 0, 9720, 3888, 0, 0,
    58320, 0, 41580, 77760, 0, 116640, 301320, 0, 259200, 660960, 0, 480816,
    1368576, 0, 1156680, 2468880, 0, 1415232, 2721600, 0, 1148040, 2185056,
    0, 583200, 816480, 0, 90720, 104976, 0, 10800, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 48,
]

_SPECTRUM_6 = [
    729, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 7290, 0, 0, 0, 0, 0,
    0, 0, 58320, 0, 0, 0, 87480, 0, 69984, 23328, 0, 0, 0, 0, 524880, 0, 0,
    0, 370980, 0, 1399680, 0, 0, 699840, 2099520, 0, 4811400, 466560, 0,
    2799360, 7290000, 0, 16562880, 2099520, 0, 6998400, 15244848, 0,
    49968576, 19012320, 0, 46889280, 48114000, 0, 149999040, 48988800, 0,
    173560320, 158793696, 0, 431451360, 203303520, 0, 593464320, 402077520,
    0, 1226726208, 655983360, 0, 1759957632, 1275108480, 0, 3455693280,
    1610681760, 0, 4922674560, 3332579760, 0, 8667868320, 4840793280, 0,
    12263996160, 7124630400, 0, 19261521360, 10458292320, 0, 25982259840,
    15546805632, 0, 37437240960, 17859890880, 0, 44159904000, 26492909760,
    0, 56014493760, 28054486080, 0, 58200653952, 29447634240, 0,
    63563901120, 30536701920, 0, 53914973760, 27520508160, 0, 44905723488,
    18151205760, 0, 28971976320, 13573863360, 0, 17778852000, 6267067200, 0,
    7903992960, 2932269264, 0, 2917632960, 1190894400, 0, 772623360,
    243544320, 0, 299531520, 100077120, 0, 33592320, 41290560, 0, 5598720,
    6298560, 0, 0, 1179360, 0, 3079296, 3429216, 0, 0, 0, 0, 0, 77760, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 96,
]

_SPECTRUM_7 = [
    2187, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 30618, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 306180, 0, 0, 0, 0, 0, 0, 0, 612360, 0, 0, 0, 734832, 0, 489888,
    139968, 0, 0, 0, 0, 0, 0, 0, 0, 3674160, 0, 0, 0, 0, 0, 0, 0, 2585520,
    0, 0, 0, 14696640, 0, 0, 0, 0, 0, 14696640, 0, 22044960, 5878656, 0, 0,
    48376440, 0, 9797760, 0, 0, 0, 58786560, 0, 105325920, 9797760, 0,
    29393280, 252292320, 0, 48988800, 19595520, 0, 0, 264539520, 0,
    258660864, 39191040, 0, 58786560, 849465792, 0, 417384576, 64665216, 0,
    118599552, 1102248000, 0, 1026927720, 440899200, 0, 117573120,
    3241833840, 0, 1646023680, 881798400, 0, 411505920, 5472048960, 0,
    4595639328, 1293304320, 0, 1175731200, 13190234400, 0, 6642881280,
    4967464320, 0, 2792361600, 23992754688, 0, 14767655616, 8897345856, 0,
    5232003840, 48779617824, 0, 29422673280, 19428958080, 0, 13418032320,
    86712135552, 0, 56942131680, 43070952960, 0, 29628426240, 174586285440,
    0, 108140326560, 100338860160, 0, 60767667072, 333349188480, 0,
    211194390960, 197052549120, 0, 133406300160, 633974103504, 0,
    394756649280, 437915782080, 0, 284879669760, 1184769633600, 0,
    732195313920, 918265662720, 0, 553710608640, 2237431905072, 0,
    1396486980000, 1839642114240, 0, 1166266563840, 4133841505920, 0,
    2463586985664, 3699825232320, 0, 2436508916352, 7740828063360, 0,
    4633391621376, 7373480647680, 0, 4422630481920, 14095095607296, 0,
    9008038009152, 14256009258624, 0, 8787284896320, 25936010563680, 0,
    15056472533760, 27127920314880, 0, 17656455116160, 46489296385728, 0,
    28595219380560, 51865158776256, 0, 30807273127680, 84076043325120, 0,
    53419783072320, 96717020198400, 0, 59173324616448, 151123241747520, 0,
    87927292938240, 177969306401280, 0, 112318130615040, 267008385528864, 0,
    160800706809792, 321325302945024, 0, 188053645282560, 466481709832320,
    0, 291050421480000, 570238841894400, 0, 343218104712000,
    806560729743456, 0, 464604287555520, 996450456984192, 0,
    620225396784000, 1373638417522560, 0, 816009087669552, 1708948701149760,
    0, 982341376894080, 2305937678879520, 0, 1414154728014336,
    2868447898270080, 0, 1691741075976000, 3783164938709184, 0,
    2145564791750016, 4708186964144640, 0, 2866434717250944,
    6089563693805760, 0, 3543718526510400, 7547844801104640, 0,
    4235506218558720, 9574787807964288, 0, 5748041164944960,
    11803431065489280, 0, 6789801853310400, 14687203311950400, 0,
    8100416661309504, 17888868241614720, 0, 10588066580077056,
    21840361606638720, 0, 12363491876450400, 26269417255213440, 0,
    14285288100787200, 31462082237108160, 0, 18299032850230272,
    37233543050766720, 0, 20709927455180544, 43720111582963200, 0,
    23313370728464640, 50763763455713280, 0, 28924064989464960,
    58412989843236000, 0, 31813638206316480, 66303578484210816, 0,
    34565462372004480, 74583100623265920, 0, 41520901293714528,
    82545422286942720, 0, 43826073580183104, 90590698165121280, 0,
    45970461276122880, 97356175759100160, 0, 52673395505996160,
    103853217900781440, 0, 53561231066238336, 108100043912367360, 0,
    53128915099827840, 111570541229580480, 0, 58350442395913920,
    112097875912081920, 0, 55765902028032000, 111406452367500864, 0,
    52657506351233280, 107575556428968768, 0, 53994455165468160,
    102377410528901760, 0, 48778189150406400, 94582347577421760, 0,
    42669649619928576, 85745409629443200, 0, 40987358888555520,
    75337864538158080, 0, 34117558361470080, 64695169565885376, 0,
    27623026142341056, 53722349499008448, 0, 24230050550665344,
    43420216983171840, 0, 18493690067425440, 33854862632935680, 0,
    13546143606925440, 25584444523483776, 0, 10783563464378880,
    18568192776336000, 0, 7350295708661760, 13016846960075520, 0,
    4835426179046400, 8727631849641600, 0, 3393591789458304,
    5646375105114240, 0, 2053100209063680, 3458776067268480, 0,
    1173620938855680, 2041794442509696, 0, 728670130929216,
    1138311067888512, 0, 375048142382592, 609672959421120, 0,
    191348768439360, 307095833018880, 0, 99253170374400, 152237238241536, 0,
    46874958318720, 69750838786176, 0, 19948807630080, 31988971163520, 0,
    10729375110720, 13802819748480, 0, 3921475057920, 6002269439040, 0,
    1657927958400, 2388145213440, 0, 1007425278720, 1073677731840, 0,
    520179426144, 484107321600, 0, 144614937600, 245492674560, 0,
    205312060800, 136090886400, 0, 89050752000, 73071694080, 0, 20222576640,
    49468890240, 0, 45500797440, 28217548800, 0, 15872371200, 12433357440,
    0, 3174474240, 2821754880, 0, 12580323840, 4938071040, 0, 3853785600,
    1058158080, 0, 0, 529079040, 0, 1410877440, 0, 0, 1162667520, 0, 0, 0,
    0, 0, 235146240, 0, 0, 264539520, 0, 0, 0, 0, 0, 0, 0, 0, 12700800, 0,
    0, 0, 0, 0, 129330432, 120932352, 0, 71197056, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 520128, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 192,
]


SPECTRUM_LISTS = {n: globals()[f"_SPECTRUM_{n}"] for n in range(1, 8)}


def spectrum_entries(n: int) -> dict[int, int]:
    """size -> set count, zero entries dropped."""
    lst = SPECTRUM_LISTS[n]
    lo = 2 ** n
    return {lo + 2 * i: c for i, c in enumerate(lst) if c}


def spectrum_count(n: int, size: int) -> int:
    lst = SPECTRUM_LISTS[n]
    lo, hi = 2 ** n, 2 * 3 ** (n - 1)
    if size < lo or size > hi or size % 2:
        return 0
    return lst[(size - lo) // 2]
