"""QCNN ansatz: generic two-qubit convolutions, controlled-rotation pooling.

Every emitted rotation owns its own parameter slot (no weight tying), so
the parameter vector is exactly [0, D) in emission order.
"""

import hashlib
import json
import logging
from typing import Any, Dict, List, Sequence, Tuple

from pydantic import ValidationError

from .constants import MODEL_FORMAT_VERSION, GateKind
from .exceptions import CircuitError
from .models.circuit import ClassReadout, GateOp, ParamCircuit
from .models.qcnn import QcnnSpec

logger = logging.getLogger(__name__)

ONE_QUBIT_BLOCK_PARAMS = 3
TWO_QUBIT_BLOCK_PARAMS = 15
POOLING_PARAMS = 2


def one_qubit_block(qubit: int, param_base: int) -> List[GateOp]:
    """RZ, RY, RZ on one qubit: a generic single-qubit unitary up to phase."""
    return [
        GateOp(kind=GateKind.RZ, qubits=(qubit,), param_index=param_base),
        GateOp(kind=GateKind.RY, qubits=(qubit,), param_index=param_base + 1),
        GateOp(kind=GateKind.RZ, qubits=(qubit,), param_index=param_base + 2),
    ]


def two_qubit_block(qubit_a: int, qubit_b: int, param_base: int) -> List[GateOp]:
    """Generic two-qubit block with 15 parameters.

    Local blocks on both qubits, an RXX/RYY/RZZ entangling core, then local
    blocks again. All-zero parameters give the identity.
    """
    if qubit_a == qubit_b:
        raise CircuitError("two_qubit_block needs distinct qubits", {"qubit": qubit_a})
    p = param_base
    gates = one_qubit_block(qubit_a, p) + one_qubit_block(qubit_b, p + 3)
    p += 6
    for offset, kind in enumerate((GateKind.RXX, GateKind.RYY, GateKind.RZZ)):
        gates.append(GateOp(kind=kind, qubits=(qubit_a, qubit_b), param_index=p + offset))
    p += 3
    gates += one_qubit_block(qubit_a, p) + one_qubit_block(qubit_b, p + 3)
    return gates


def _conv_pairs(active: Sequence[int], sublayer: int) -> List[Tuple[int, int]]:
    """Even pairs on even sublayers, odd ring pairs on odd ones."""
    m = len(active)
    if sublayer % 2 == 0:
        return [(active[i], active[i + 1]) for i in range(0, m - 1, 2)]
    if m == 2:
        return []
    pairs = []
    for i in range(1, m, 2):
        if i + 1 < m:
            pairs.append((active[i], active[i + 1]))
        elif m % 2 == 0:
            pairs.append((active[i], active[0]))
    return pairs


def _pool(active: Sequence[int], param_base: int) -> Tuple[List[GateOp], List[int]]:
    gates: List[GateOp] = []
    kept: List[int] = []
    p = param_base
    for i in range(0, len(active) - 1, 2):
        discarded, target = active[i], active[i + 1]
        gates.append(GateOp(kind=GateKind.CRZ, qubits=(discarded, target), param_index=p))
        gates.append(GateOp(kind=GateKind.CRX, qubits=(discarded, target), param_index=p + 1))
        p += POOLING_PARAMS
        kept.append(target)
    if len(active) % 2 == 1:
        kept.append(active[-1])
    return gates, kept


def build_qcnn(spec: QcnnSpec) -> Tuple[ParamCircuit, ClassReadout]:
    """Alternating convolution and pooling layers down to two readout qubits.

    Args:
        spec: Network shape

    Returns:
        (circuit, readout); readout bits b1 b0 of the two survivors map to class 2*b1 + b0
    """
    gates: List[GateOp] = []
    active = list(range(spec.n_qubits))
    p = 0
    layer = 0
    while len(active) > spec.readout_qubit_count:
        for sublayer in range(spec.conv_reps):
            for a, b in _conv_pairs(active, sublayer):
                gates += two_qubit_block(a, b, p)
                p += TWO_QUBIT_BLOCK_PARAMS
        pool_gates, active = _pool(active, p)
        gates += pool_gates
        p += POOLING_PARAMS * len(pool_gates) // 2
        layer += 1
        logger.debug("QCNN layer %d leaves qubits %s", layer, active)

    gates += two_qubit_block(active[0], active[1], p)
    p += TWO_QUBIT_BLOCK_PARAMS

    circuit = ParamCircuit(n_qubits=spec.n_qubits, gates=tuple(gates), param_count=p)
    readout = ClassReadout.binary_patterns(tuple(active))
    return circuit, readout


def parameter_count(spec: QcnnSpec) -> int:
    """Closed-form D of build_qcnn: each layer on m qubits adds floor(m/2) blocks per sublayer and floor(m/2) pooling pairs."""
    m = spec.n_qubits
    total = 0
    while m > spec.readout_qubit_count:
        pairs = m // 2
        total += spec.conv_reps * pairs * TWO_QUBIT_BLOCK_PARAMS + pairs * POOLING_PARAMS
        m -= pairs
    return total + TWO_QUBIT_BLOCK_PARAMS


def circuit_to_dict(circuit: ParamCircuit) -> Dict[str, Any]:
    """JSON-ready gate list."""
    return circuit.model_dump(mode="json", exclude_none=True)


def circuit_from_dict(data: Dict[str, Any]) -> ParamCircuit:
    """Rebuild a circuit from circuit_to_dict output.

    Raises:
        CircuitError: If the description is not a valid circuit
    """
    try:
        return ParamCircuit.model_validate(data)
    except ValidationError as e:
        raise CircuitError("Invalid circuit description", {"error": str(e)})


def circuit_hash(circuit: ParamCircuit) -> str:
    """sha256 of the canonical JSON gate list."""
    canonical = json.dumps(circuit_to_dict(circuit), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def export_circuit(circuit: ParamCircuit, readout: ClassReadout) -> Dict[str, Any]:
    """Circuit plus readout, the description stored beside trained models."""
    return {
        "version": MODEL_FORMAT_VERSION,
        "circuit": circuit_to_dict(circuit),
        "readout": readout.model_dump(mode="json"),
        "hash": circuit_hash(circuit),
    }
