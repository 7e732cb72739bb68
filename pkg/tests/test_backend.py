import json
import os
import subprocess
import sys

SCRIPT = """
import json
from ordhyp import BACKEND, minimize_ordinary, spectrum, acnodal_coset
cfg, meta = acnodal_coset(4, 8, 1)
rep = spectrum(cfg)
print(json.dumps([BACKEND, minimize_ordinary(5, 12).value, rep.ordinary, rep.dplus1]))
"""


def run_with(env_value):
    env = dict(os.environ)
    env.pop("ORDHYP_PURE_PYTHON", None)
    if env_value is not None:
        env["ORDHYP_PURE_PYTHON"] = env_value
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_pure_python_fallback_gives_same_results():
    fallback = run_with("1")
    default = run_with(None)
    assert fallback[0] == "python"
    assert default[0] in ("cython", "python")
    assert fallback[1:] == default[1:] == [312, 35, 7]
