#!/usr/bin/env python3
"""Regenerates the bundled world tables.

maddison_world_1_1973.csv holds the Maddison (2001) world benchmark rows.
maddison_world_1_2002.csv adds annual rows for 1951-2002. Only the benchmark
rows (1950, 1973, 1998) are Maddison's published totals; the annual rows in
between are reconstructions (see README.md in this directory).
"""

import csv
import pathlib

HERE = pathlib.Path(__file__).resolve().parent

# year, population (millions), GDP (billions of 1990 int. GK dollars), note
BENCHMARKS = [
    (1, 230.820, 102.536, "Maddison 2001"),
    (1000, 268.273, 121.528,
     "Maddison 2001 population; per capita GDP corrected to 453 after Meliantsev 2004"),
    (1500, 437.818, 247.116, "Maddison 2001"),
    (1600, 555.828, 329.417, "Maddison 2001"),
    (1700, 603.410, 371.369, "Maddison 2001"),
    (1820, 1041.092, 694.442, "Maddison 2001"),
    (1870, 1270.014, 1101.369, "Maddison 2001"),
    (1913, 1791.020, 2704.782, "Maddison 2001"),
    (1950, 2524.531, 5336.101, "Maddison 2001"),
    (1973, 3913.482, 16059.180, "Maddison 2001"),
]
BENCHMARK_1998 = (1998, 5907.680, 33725.635, "Maddison 2001")

# US Census Bureau mid-year world population, millions.
CENSUS = {
    1950: 2557.628, 1951: 2594.939, 1952: 2636.772, 1953: 2682.053,
    1954: 2730.228, 1955: 2782.099, 1956: 2835.300, 1957: 2891.350,
    1958: 2948.138, 1959: 3000.716, 1960: 3043.002, 1961: 3083.967,
    1962: 3140.093, 1963: 3209.828, 1964: 3281.201, 1965: 3350.426,
    1966: 3420.678, 1967: 3490.334, 1968: 3562.314, 1969: 3637.159,
    1970: 3712.698, 1971: 3790.327, 1972: 3866.568, 1973: 3942.097,
    1974: 4016.0, 1975: 4088.0, 1976: 4159.0, 1977: 4230.0, 1978: 4303.0,
    1979: 4378.0, 1980: 4451.0, 1981: 4534.0, 1982: 4615.0, 1983: 4695.0,
    1984: 4774.0, 1985: 4855.0, 1986: 4938.0, 1987: 5024.0, 1988: 5110.0,
    1989: 5196.0, 1990: 5288.0, 1991: 5371.0, 1992: 5454.0, 1993: 5535.0,
    1994: 5616.0, 1995: 5700.0, 1996: 5778.0, 1997: 5856.0, 1998: 5932.0,
    1999: 6008.0, 2000: 6085.0, 2001: 6162.0, 2002: 6239.0,
}

# Approximate annual world real GDP growth, percent.
GROWTH_1951_1973 = [6.0, 4.4, 4.9, 3.5, 6.3, 4.8, 3.9, 2.9, 5.4, 4.7, 4.2, 5.2,
                    4.9, 6.6, 5.4, 5.7, 4.3, 5.9, 5.8, 4.5, 4.3, 5.4, 6.8]
GROWTH_1974_1998 = [2.0, 1.2, 5.0, 4.0, 4.3, 3.9, 2.0, 1.9, 0.7, 2.7, 4.6, 3.7,
                    3.5, 3.7, 4.6, 3.6, 2.5, 1.3, 1.8, 1.6, 3.4, 3.2, 3.9, 4.0,
                    2.2]
GROWTH_1999_2002 = [3.6, 4.8, 2.4, 3.0]


def chain(first_year, start, end, rates):
    """Chains growth rates from `start`, rescaled uniformly to land on `end`."""
    raw = start
    for pct in rates:
        raw *= 1.0 + pct / 100.0
    fix = (end / raw) ** (1.0 / len(rates))
    out, level = {}, start
    for i, pct in enumerate(rates):
        level *= (1.0 + pct / 100.0) * fix
        out[first_year + i] = level
    return out


def population_ratio(year, anchors):
    (y0, r0), (y1, r1) = (anchors[0], anchors[1]) if year <= 1973 else (anchors[1], anchors[2])
    if year > 1998:
        return anchors[2][1]
    return r0 + (r1 - r0) * (year - y0) / (y1 - y0)


def write(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["year", "population_millions", "gdp_billions", "note"])
        for year, pop, gdp, note in rows:
            w.writerow([year, f"{pop:.3f}", f"{gdp:.3f}", note])


def main():
    write(HERE / "maddison_world_1_1973.csv", BENCHMARKS)

    gdp = {}
    gdp.update(chain(1951, 5336.101, 16059.180, GROWTH_1951_1973))
    gdp.update(chain(1974, 16059.180, 33725.635, GROWTH_1974_1998))
    level = 33725.635
    for i, pct in enumerate(GROWTH_1999_2002):
        level *= 1.0 + pct / 100.0
        gdp[1999 + i] = level

    anchors = [(y, p / CENSUS[y]) for y, p, _, _ in (BENCHMARKS[8], BENCHMARKS[9], BENCHMARK_1998)]
    bench = {row[0]: row for row in BENCHMARKS + [BENCHMARK_1998]}
    rows = [row for row in BENCHMARKS]
    for year in range(1951, 2003):
        if year in bench:
            if year == 1998:
                rows.append(BENCHMARK_1998)
            continue
        pop = CENSUS[year] * population_ratio(year, anchors)
        note = "reconstructed annual value" if year < 1999 else "reconstructed from World Bank / Census"
        rows.append((year, pop, gdp[year], note))
    rows.sort(key=lambda r: r[0])
    write(HERE / "maddison_world_1_2002.csv", rows)


if __name__ == "__main__":
    main()
