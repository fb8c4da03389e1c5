"""Pydantic models for circuits, datasets, training, certification and sweeps."""

from .circuit import Statevector, GateOp, ParamCircuit, ClassReadout
from .cluster import ClusterParams, Sample, PhaseRegion, PhaseBoundarySpec, DatasetHeader, SampleRecord
from .qcnn import QcnnSpec
from .training import SnesConfig, IterationRecord, TrainHistory, ModelFile
from .certification import SmoothedModel, CertificationResult, MetricsReport, CertificationSettings
from .sweep import (
    SweepRecord, LinearFit, FrontierPoint, FrontierResult, CorrelationBin,
    CorrelationResult, NoiseSweepRow, NoiseSweepSettings, SearchDimension
)

__all__ = [
    'Statevector',
    'GateOp',
    'ParamCircuit',
    'ClassReadout',
    'ClusterParams',
    'Sample',
    'PhaseRegion',
    'PhaseBoundarySpec',
    'DatasetHeader',
    'SampleRecord',
    'QcnnSpec',
    'SnesConfig',
    'IterationRecord',
    'TrainHistory',
    'ModelFile',
    'SmoothedModel',
    'CertificationResult',
    'MetricsReport',
    'CertificationSettings',
    'SweepRecord',
    'LinearFit',
    'FrontierPoint',
    'FrontierResult',
    'CorrelationBin',
    'CorrelationResult',
    'NoiseSweepRow',
    'NoiseSweepSettings',
    'SearchDimension'
]
