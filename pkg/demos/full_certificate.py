"""Compute the full certificate for the shipped configuration and summarize it.

Takes a few minutes in modular mode.  The JSON is written next to this script.

Run:  python demos/full_certificate.py
"""

import logging
from pathlib import Path

from lefpencil.certify import load_config, run_certificate, shipped_config_path

logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
cert = run_certificate(load_config(shipped_config_path()))
body = cert.body

print("base points:      ", body["base_points"]["total_length"], "cubic", body["base_points"]["cubic"])
print("critical length:  ", body["critical_scheme"]["grand_total"], "split", body["critical_scheme"]["strata"])
print("eliminant degree: ", body["eliminant"]["degree"], "squarefree", body["eliminant"]["squarefree"])
print("irreducibility:   ", body["eliminant"]["irreducibility"])
print("eta defined:      ", body["eta"]["passed"])
print("Euler target:     ", body["euler"]["target"])
print("verdict:          ", cert.verdict, "exit", cert.exit_code)
for line in body.get("conclusions", []):
    print(" -", line)
print("stage timings (ms):", cert.timings_ms)

out = Path(__file__).with_name("certificate.json")
out.write_text(cert.to_json())
print("written to", out)
