import json
from pathlib import Path

from hyperbessel.params import validate_order

ORACLE = json.loads((Path(__file__).parent / "fixtures" / "oracle.json").read_text())


def order_of(row):
    return validate_order(row["d"], row["alpha"])


def oracle_rows(section):
    return ORACLE[section]


def oracle_id(row):
    extra = f"-{row['kind']}" if "kind" in row else ""
    extra += f"-x{row['x']}" if "x" in row else ""
    return f"d{row['d']}-{'_'.join(str(a) for a in row['alpha'])}{extra}"
