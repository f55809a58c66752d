#!/usr/bin/env python3
# Copyright 2026 The esvqe Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the committed FCIDUMP fixtures with PySCF (STO-3G, RHF).

Writes <name>.fcidump and <name>.reference.json next to this script. Not
needed to build or test the C++ code; the outputs are committed.
"""
import json
import math
import os

from pyscf import ao2mo, fci, gto, scf, symm
from pyscf.tools import fcidump

HERE = os.path.dirname(os.path.abspath(__file__))


def h_chain(n, spacing):
    return [("H", (0.0, 0.0, i * spacing)) for i in range(n)]


def water(r_oh, angle_deg=104.5):
    half = math.radians(angle_deg) / 2.0
    return [
        ("O", (0.0, 0.0, 0.0)),
        ("H", (0.0, r_oh * math.sin(half), r_oh * math.cos(half))),
        ("H", (0.0, -r_oh * math.sin(half), r_oh * math.cos(half))),
    ]


def h3_plus(side):
    return [
        ("H", (0.0, 0.0, 0.0)),
        ("H", (side, 0.0, 0.0)),
        ("H", (side / 2.0, side * math.sqrt(3.0) / 2.0, 0.0)),
    ]


FIXTURES = [
    ("h2_0.735", h_chain(2, 0.735), 0),
    ("h2_1.000", h_chain(2, 1.000), 0),
    ("h3plus_0.900", h3_plus(0.900), 1),
    ("h4_0.900", h_chain(4, 0.900), 0),
    ("h6_1.000", h_chain(6, 1.000), 0),
    ("lih_1.200", [("Li", (0, 0, 0)), ("H", (0, 0, 1.200))], 0),
    ("lih_1.400", [("Li", (0, 0, 0)), ("H", (0, 0, 1.400))], 0),
    ("lih_1.595", [("Li", (0, 0, 0)), ("H", (0, 0, 1.595))], 0),
    ("lih_1.800", [("Li", (0, 0, 0)), ("H", (0, 0, 1.800))], 0),
    ("lih_2.000", [("Li", (0, 0, 0)), ("H", (0, 0, 2.000))], 0),
    ("h2o_0.958", water(0.958), 0),
    ("h2o_1.300", water(1.300), 0),
    ("h2o_1.900", water(1.900), 0),
]


def generate(name, atoms, charge):
    mol = gto.M(atom=atoms, basis="sto-3g", charge=charge, spin=0,
                symmetry=True, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    e_hf = mf.kernel()
    if not mf.converged:
        raise RuntimeError(f"SCF did not converge for {name}")
    norb = mf.mo_coeff.shape[1]
    nelec = mol.nelectron
    h1 = mf.mo_coeff.T @ mf.get_hcore() @ mf.mo_coeff
    eri = ao2mo.restore(1, ao2mo.kernel(mol, mf.mo_coeff), norb)
    solver = fci.direct_spin1.FCI()
    solver.conv_tol = 1e-12
    e_fci, _ = solver.kernel(h1, eri, norb, nelec, ecore=mol.energy_nuc())
    path = os.path.join(HERE, name + ".fcidump")
    fcidump.from_scf(mf, path, tol=1e-15)
    ref = {
        "name": name,
        "basis": "sto-3g",
        "charge": charge,
        "n_orb": int(norb),
        "n_elec": int(nelec),
        "e_core": float(mol.energy_nuc()),
        "hf_energy": float(e_hf),
        "fci_energy": float(e_fci),
        "orbital_symmetry": [
            symm.irrep_id2name(mol.groupname, int(i))
            for i in scf.hf_symm.get_orbsym(mol, mf.mo_coeff)],
    }
    with open(os.path.join(HERE, name + ".reference.json"), "w") as f:
        json.dump(ref, f, indent=2, sort_keys=True)
        f.write("\n")
    print(f"{name}: norb={norb} nelec={nelec} hf={e_hf:.10f} fci={e_fci:.10f}")


if __name__ == "__main__":
    for fixture in FIXTURES:
        generate(*fixture)
