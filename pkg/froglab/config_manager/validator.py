"""
FrogLab
Configuration Validator v0.3.0
20260923

Validate raw experiment files against section schemas and build the
typed ExperimentConfig.
"""

import re
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from froglab.config_manager.experiment import BATTERY, DEFAULT_VERIFY_COUNTS, ExperimentConfig
from froglab.config_manager.loader import ConfigLoader
from froglab.exceptions import ConfigError

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class ConfigValidator:
    """Validate experiment configuration files"""

    # Define schemas for each section
    SCHEMAS = {
        "experiment": {
            "seed": {"type": "integer", "required": True, "min": 0},
            "d": {"type": "integer", "required": False, "min": 1, "max": 4},
            "kind": {
                "type": "string",
                "required": False,
                "values": ["sim", "scaling", "perc", "tails", "fm", "paths", "weighted", "indicators"],
            },
            "output": {"type": "string", "required": False},
            "workers": {"type": "integer", "required": False, "min": 1},
            "horizon_cap": {"type": "integer", "required": False, "min": 1},
            "resamples": {"type": "integer", "required": False, "min": 10},
        },
        "sim": {
            "n": {"type": "int_list", "required": False, "min": 1},
            "direction": {"type": "string", "required": False},
            "replicas": {"type": "integer", "required": False, "min": 1},
            "dims": {"type": "int_list", "required": False, "min": 1, "max": 4},
            "tail_factors": {"type": "float_list", "required": False, "min": 0},
        },
        "perc": {
            "l": {"type": "int_list", "required": False, "min": 1},
            "m": {"type": "int_list", "required": False, "min": 1},
            "p": {"type": "float_list", "required": False, "min": 0, "max": 1},
            "instances": {"type": "integer", "required": False, "min": 1},
        },
        "verify": {
            "battery": {"type": "string_list", "required": False, "values": list(BATTERY)},
            "corrupt_key": {"type": "boolean", "required": False},
            **{
                f"{name}_count": {"type": "integer", "required": False, "min": 1}
                for name in DEFAULT_VERIFY_COUNTS
            },
        },
    }

    # Keys each experiment kind needs beyond the schema defaults
    KIND_REQUIREMENTS = {
        "sim": [("sim", "n"), ("sim", "replicas")],
        "scaling": [("sim", "n"), ("sim", "replicas")],
        "tails": [("sim", "n"), ("sim", "replicas")],
        "fm": [("sim", "n"), ("sim", "replicas")],
        "paths": [("sim", "n"), ("sim", "replicas")],
        "perc": [("perc", "l"), ("perc", "m"), ("perc", "p"), ("perc", "instances")],
        "weighted": [("perc", "l"), ("perc", "instances")],
        "indicators": [("perc", "l"), ("perc", "m"), ("perc", "instances")],
    }

    @staticmethod
    def parse_value(value: str, expected_type: str) -> Any:
        """
        Parse a raw string into the expected type

        Raises:
            ValueError: If the value does not parse
        """
        text = value.strip()
        if expected_type == "string":
            return text
        if expected_type == "integer":
            return int(text)
        if expected_type == "float":
            return float(text)
        if expected_type == "boolean":
            lowered = text.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(f"not a boolean: {text!r}")
        items = [part for part in re.split(r"[,;\s]+", text) if part]
        if expected_type == "int_list":
            return [int(part) for part in items]
        if expected_type == "float_list":
            return [float(part) for part in items]
        if expected_type == "string_list":
            return items
        raise ValueError(f"unknown type {expected_type}")

    def validate_config(self, config: Dict[str, Dict[str, str]], command: str = "run") -> List[str]:
        """
        Validate raw configuration against the section schemas

        Args:
            config: Raw values keyed by section then key
            command: "run" or "verify" (run also needs a kind and its keys)

        Returns:
            List of validation error messages (empty if valid)
        """
        errors = []

        if "experiment" not in config:
            errors.append("Missing required section: [experiment]")
            return errors

        for section, values in config.items():
            schema = self.SCHEMAS.get(section)
            if schema is None:
                errors.append(f"Unknown section: [{section}]")
                continue
            for key in values:
                if key not in schema:
                    errors.append(f"Unknown key '{key}' in [{section}]")

            for field_name, field_schema in schema.items():
                if field_name not in values:
                    if field_schema.get("required", False):
                        errors.append(f"Missing required field: {section}.{field_name}")
                    continue
                errors.extend(self._check_field(section, field_name, values[field_name], field_schema))

        if command == "run":
            kind = config["experiment"].get("kind")
            if kind is None:
                errors.append("Missing required field: experiment.kind")
            for section, key in self.KIND_REQUIREMENTS.get(kind or "", []):
                if key not in config.get(section, {}):
                    errors.append(f"Kind '{kind}' needs {section}.{key}")
        elif command == "verify":
            battery = config.get("verify", {}).get("battery")
            if battery is not None and not self.parse_value(battery, "string_list"):
                errors.append("Field 'verify.battery' selects no checks")

        return errors

    def _check_field(self, section: str, name: str, raw: str, schema: Dict[str, Any]) -> List[str]:
        errors = []
        expected_type = schema["type"]
        try:
            value = self.parse_value(raw, expected_type)
        except ValueError:
            return [f"Field '{section}.{name}' has wrong type. Expected {expected_type}, got '{raw}'"]

        items = value if isinstance(value, list) else [value]
        if expected_type.endswith("_list") and not items and name != "battery":
            errors.append(f"Field '{section}.{name}' is empty")
        allowed_values = schema.get("values")
        for item in items:
            if allowed_values and item not in allowed_values:
                errors.append(
                    f"Field '{section}.{name}' has invalid value '{item}'. "
                    f"Allowed values: {allowed_values}"
                )
            if "min" in schema and isinstance(item, (int, float)) and item < schema["min"]:
                errors.append(f"Field '{section}.{name}' value {item} below minimum {schema['min']}")
            if "max" in schema and isinstance(item, (int, float)) and item > schema["max"]:
                errors.append(f"Field '{section}.{name}' value {item} above maximum {schema['max']}")
        return errors

    def build(self, config: Dict[str, Dict[str, str]], command: str = "run") -> ExperimentConfig:
        """
        Validate and convert raw values into an ExperimentConfig

        Raises:
            ConfigError: Carrying every validation message
        """
        errors = self.validate_config(config, command)
        if errors:
            raise ConfigError("; ".join(errors))

        def typed(section: str, key: str) -> Optional[Any]:
            raw = config.get(section, {}).get(key)
            if raw is None:
                return None
            return self.parse_value(raw, self.SCHEMAS[section][key]["type"])

        fields = {
            "master_seed": typed("experiment", "seed"),
            "d": typed("experiment", "d"),
            "kind": typed("experiment", "kind"),
            "output": typed("experiment", "output"),
            "workers": typed("experiment", "workers"),
            "horizon_cap": typed("experiment", "horizon_cap"),
            "resamples": typed("experiment", "resamples"),
            "n_grid": typed("sim", "n"),
            "direction": typed("sim", "direction"),
            "replicas": typed("sim", "replicas"),
            "dims": typed("sim", "dims"),
            "tail_factors": typed("sim", "tail_factors"),
            "L_grid": typed("perc", "l"),
            "M_grid": typed("perc", "m"),
            "p_grid": typed("perc", "p"),
            "instances": typed("perc", "instances"),
            "battery": typed("verify", "battery"),
            "corrupt_key": typed("verify", "corrupt_key"),
        }
        counts = dict(DEFAULT_VERIFY_COUNTS)
        for name in DEFAULT_VERIFY_COUNTS:
            value = typed("verify", f"{name}_count")
            if value is not None:
                counts[name] = value
        fields["verify_counts"] = counts

        try:
            return ExperimentConfig(**{k: v for k, v in fields.items() if v is not None})
        except ValidationError as e:
            messages = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
            raise ConfigError("; ".join(messages)) from e


# Global validator instance
_validator = None


def get_validator() -> ConfigValidator:
    """
    Get global validator instance

    Returns:
        ConfigValidator instance
    """
    global _validator
    if _validator is None:
        _validator = ConfigValidator()
    return _validator


def load_experiment(path, command: str = "run") -> ExperimentConfig:
    """
    Read, override and validate one experiment file

    Raises:
        ConfigError: Missing file, parse error or any validation message
    """
    loader = ConfigLoader(path)
    loader.load()
    return get_validator().build(loader.resolved(), command)
