"""
Verification Configuration
Suite catalogue and run configuration loaded from YAML
"""

import hashlib
import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional

import yaml
from dotenv import load_dotenv

from src.calculus.polarized import CauchyQuadConfig
from src.domains.descriptor import DomainDescriptor
from src.polynomials.signature import Signature
from src.utils.errors import ConfigInvalid
from src.utils.logger import get_logger
from src.verification.registry import get_check

logger = get_logger(__name__)

CONFIG_ENV = 'BSD_VERIFY_CONFIG'
SUITES_ENV = 'BSD_VERIFY_SUITES'
DEFAULT_SUITES_PATH = Path(__file__).resolve().parents[2] / 'config' / 'suites.yaml'

RUN_KEYS = {'domain', 'n', 'p', 'q', 'alpha', 'signature', 'seed', 'samples', 'tol',
            'format', 'out', 'suites', 'log_level'}
CHECK_KEYS = {'id', 'tolerance', 'samples', 'seed', 'params', 'alpha', 'signature'}
SUITE_KEYS = {'id', 'description', 'domain', 'quad', 'alpha', 'signature', 'checks'}
FORMATS = ('json', 'text')


@dataclass(frozen=True)
class CheckSpec:
    """One check entry of a suite; None falls back to the registry default"""

    id: str
    tolerance: Optional[float] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict)
    alpha: Optional[float] = None
    signature: Optional[Signature] = None


@dataclass(frozen=True)
class SuiteSpec:
    id: str
    domain: DomainDescriptor
    checks: List[CheckSpec] = field(default_factory=list)
    description: str = ''
    quad: CauchyQuadConfig = field(default_factory=CauchyQuadConfig)
    alpha: float = 4.0
    signature: Optional[Signature] = None

    def validate(self) -> 'SuiteSpec':
        """
        Raises:
            UnknownCheck: for a check id missing from the registry
            ConfigInvalid: for a check that does not support the suite domain
        """
        for check in self.checks:
            definition = get_check(check.id)
            if not definition.supports(self.domain):
                raise ConfigInvalid(f"Check {check.id} does not support {self.domain.label} (suite {self.id})")
        return self


def _number(value, key: str, kind=float):
    if value is None:
        return None
    if isinstance(value, bool):
        raise ConfigInvalid(f"{key} must be numeric, got {value!r}")
    try:
        return kind(value)
    except (TypeError, ValueError) as e:
        raise ConfigInvalid(f"{key} must be numeric, got {value!r}") from e


def _signature(value) -> Optional[Signature]:
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return Signature(tuple(int(v) for v in value))
    return Signature.parse(str(value))


def _read_yaml(path) -> Any:
    try:
        with open(path, 'r') as f:
            return yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigInvalid(f"Cannot read config {path}: {e}") from e


def _parse_check(record, suite_id: str) -> CheckSpec:
    if isinstance(record, str):
        record = {'id': record}
    if not isinstance(record, dict) or 'id' not in record:
        raise ConfigInvalid(f"Suite {suite_id}: check entries need an 'id': {record!r}")
    unknown = set(record) - CHECK_KEYS
    if unknown:
        raise ConfigInvalid(f"Suite {suite_id}, check {record['id']}: unknown keys {sorted(unknown)}")
    params = record.get('params') or {}
    if not isinstance(params, dict):
        raise ConfigInvalid(f"Suite {suite_id}, check {record['id']}: params must be a mapping")
    return CheckSpec(
        id=str(record['id']),
        tolerance=_number(record.get('tolerance'), 'tolerance'),
        samples=_number(record.get('samples'), 'samples', int),
        seed=_number(record.get('seed'), 'seed', int),
        params=params,
        alpha=_number(record.get('alpha'), 'alpha'),
        signature=_signature(record.get('signature')),
    )


def parse_suite(record: Dict) -> SuiteSpec:
    """Build and validate one suite from its YAML record"""
    if not isinstance(record, dict) or 'id' not in record:
        raise ConfigInvalid(f"Suite records need an 'id': {record!r}")
    suite_id = str(record['id'])
    unknown = set(record) - SUITE_KEYS
    if unknown:
        raise ConfigInvalid(f"Suite {suite_id}: unknown keys {sorted(unknown)}")

    spec = SuiteSpec(
        id=suite_id,
        domain=DomainDescriptor.from_config(record.get('domain', {'kind': 'disk'})),
        checks=[_parse_check(c, suite_id) for c in record.get('checks') or []],
        description=str(record.get('description', '')),
        quad=CauchyQuadConfig.from_dict(record.get('quad')),
        alpha=_number(record.get('alpha', 4.0), 'alpha'),
        signature=_signature(record.get('signature')),
    )
    return spec.validate()


def load_suite_catalogue(path=None) -> Dict[str, SuiteSpec]:
    """
    Load the suite catalogue

    Args:
        path: YAML file with a top-level 'suites' list; defaults to
            $BSD_VERIFY_SUITES, then config/suites.yaml

    Returns:
        Suites keyed by id, in file order

    Raises:
        ConfigInvalid: unreadable file, duplicate ids or malformed entries
        UnknownCheck: a suite names an unregistered check
    """
    path = path or os.getenv(SUITES_ENV) or DEFAULT_SUITES_PATH
    data = _read_yaml(path) or {}
    if not isinstance(data, dict) or not isinstance(data.get('suites', []), list):
        raise ConfigInvalid(f"{path}: expected a top-level 'suites' list")

    catalogue: Dict[str, SuiteSpec] = {}
    for record in data.get('suites', []):
        spec = parse_suite(record)
        if spec.id in catalogue:
            raise ConfigInvalid(f"Duplicate suite id: {spec.id}")
        catalogue[spec.id] = spec
    logger.debug(f"Loaded {len(catalogue)} suites from {path}")
    return catalogue


@dataclass(frozen=True)
class RunConfig:
    """
    Flat run settings shared by the config file and the CLI flags

    ``explicit`` names the settings given by the user rather than defaulted;
    only those override per-suite and per-check values.
    """

    domain: Optional[DomainDescriptor] = None
    alpha: float = 4.0
    signature: Optional[Signature] = None
    seed: int = 42
    samples: Optional[int] = None
    tol: Optional[float] = None
    format: str = 'json'
    out: Optional[str] = None
    suites: List[str] = field(default_factory=list)
    log_level: str = 'INFO'
    explicit: FrozenSet[str] = frozenset()

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ConfigInvalid(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.tol is not None and self.tol < 0:
            raise ConfigInvalid(f"tol must be non-negative, got {self.tol}")
        if self.samples is not None and self.samples < 1:
            raise ConfigInvalid(f"samples must be positive, got {self.samples}")

    @classmethod
    def from_flat(cls, record: Dict[str, Any]) -> 'RunConfig':
        """Build from flat keys (domain, n, p, q, alpha, ...); None values are ignored"""
        record = {k: v for k, v in (record or {}).items() if v is not None}
        unknown = set(record) - RUN_KEYS
        if unknown:
            raise ConfigInvalid(f"Unknown run settings: {sorted(unknown)}")

        values: Dict[str, Any] = {}
        explicit = set()
        if {'domain', 'n', 'p', 'q'} & set(record):
            domain_record = {'kind': record.get('domain', 'ball')}
            for key in ('n', 'p', 'q'):
                if key in record:
                    domain_record[key] = _number(record[key], key, int)
            values['domain'] = DomainDescriptor.from_config(domain_record)
            explicit.add('domain')
        for key, kind in (('alpha', float), ('seed', int), ('samples', int), ('tol', float)):
            if key in record:
                values[key] = _number(record[key], key, kind)
                explicit.add(key)
        if 'signature' in record:
            values['signature'] = _signature(record['signature'])
            explicit.add('signature')
        for key in ('format', 'out', 'log_level'):
            if key in record:
                values[key] = str(record[key])
                explicit.add(key)
        if 'suites' in record:
            suites = record['suites']
            values['suites'] = [str(s) for s in (suites if isinstance(suites, list) else [suites])]
            explicit.add('suites')
        return cls(**values, explicit=frozenset(explicit))

    def merged(self, flags: Dict[str, Any]) -> 'RunConfig':
        """Overlay explicit flags (None means not given) on this configuration"""
        given = self.from_flat(flags)
        updates = {key: getattr(given, key) for key in given.explicit}
        return replace(self, **updates, explicit=self.explicit | given.explicit)

    def overrides(self, key: str) -> bool:
        return key in self.explicit

    def to_dict(self) -> Dict[str, Any]:
        return {
            'domain': self.domain.to_config() if self.domain else None,
            'alpha': self.alpha,
            'signature': self.signature.to_config() if self.signature else None,
            'seed': self.seed,
            'samples': self.samples,
            'tol': self.tol,
            'suites': list(self.suites),
            'explicit': sorted(self.explicit),
        }


def load_run_config(path=None) -> RunConfig:
    """
    Load the flat run configuration

    Args:
        path: YAML file of flat key-value pairs; defaults to $BSD_VERIFY_CONFIG
            (a .env file is honoured). Without a file the built-in defaults apply.

    Raises:
        ConfigInvalid: unreadable file or unknown keys
    """
    load_dotenv()
    path = path or os.getenv(CONFIG_ENV)
    if not path:
        return RunConfig()
    data = _read_yaml(path) or {}
    if not isinstance(data, dict):
        raise ConfigInvalid(f"{path}: expected flat key-value pairs")
    logger.info(f"Loaded run configuration from {path}")
    return RunConfig.from_flat(data)


def config_hash(payload: Dict[str, Any]) -> str:
    """sha256 of the canonical JSON of a configuration payload"""
    canonical = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()
