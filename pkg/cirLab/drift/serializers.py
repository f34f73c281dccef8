from django.conf import settings
from rest_framework import serializers

from drift.core import validate_params
from drift.estimators import ESTIMATORS, resolve_estimator
from drift.exceptions import DriftError, InvalidConfig, NonPositiveParameter, SchemeInadmissible
from drift.montecarlo import ExperimentConfig
from drift.simulate import SimConfig, check_admissible, resolve_scheme

'''
RunConfigSerializer validates the flat key = value experiment files read by
`manage.py montecarlo`. Omitted keys fall back to settings.DRIFT; the
validated data carries a ready ExperimentConfig under "experiment".
'''


def _split(value):
    return [item.strip() for item in str(value).split(",") if item.strip()]


class RunConfigSerializer(serializers.Serializer):
    a = serializers.FloatField()
    b = serializers.FloatField()
    sigma = serializers.FloatField()
    r0 = serializers.FloatField()
    horizon = serializers.FloatField(required=False)
    dt = serializers.FloatField(required=False)
    scheme = serializers.CharField(required=False)
    replications = serializers.IntegerField(required=False, min_value=1)
    checkpoints = serializers.CharField(required=False)
    base_seed = serializers.IntegerField(required=False)
    estimators = serializers.CharField(required=False)
    inv_floor = serializers.FloatField(required=False, min_value=0.0)
    out = serializers.CharField(required=False)

    def to_internal_value(self, data):
        unknown = sorted(set(data) - set(self.fields))
        if unknown:
            raise serializers.ValidationError({unknown[0]: ["unknown key"]})
        return super().to_internal_value(data)

    def _positive(self, value):
        if not value > 0:
            raise serializers.ValidationError(f"must be positive, got {value}")
        return value

    validate_a = _positive
    validate_b = _positive
    validate_sigma = _positive
    validate_r0 = _positive
    validate_horizon = _positive
    validate_dt = _positive

    def validate_scheme(self, value):
        try:
            return resolve_scheme(value)
        except DriftError as exc:
            raise serializers.ValidationError(str(exc))

    def validate_checkpoints(self, value):
        try:
            checkpoints = [float(item) for item in _split(value)]
        except ValueError:
            raise serializers.ValidationError(f"expected comma-separated numbers, got {value!r}")
        if not checkpoints:
            raise serializers.ValidationError("at least one checkpoint is required")
        return checkpoints

    def validate_estimators(self, value):
        try:
            names = [resolve_estimator(item) for item in _split(value)]
        except DriftError as exc:
            raise serializers.ValidationError(str(exc))
        if not names:
            raise serializers.ValidationError("at least one estimator is required")
        return tuple(names)

    def validate(self, attrs):
        defaults = settings.DRIFT
        checkpoints = attrs.get("checkpoints", defaults["CHECKPOINTS"])
        horizon = attrs.get("horizon", max(checkpoints))
        if max(checkpoints) > horizon:
            raise serializers.ValidationError({"checkpoints": [f"last checkpoint exceeds horizon {horizon}"]})

        try:
            params = validate_params(attrs["a"], attrs["b"], attrs["sigma"], attrs["r0"])
        except NonPositiveParameter as exc:
            raise serializers.ValidationError({exc.name: [str(exc)]})

        scheme = attrs.get("scheme", defaults["SCHEME"])
        try:
            sim = SimConfig(horizon=horizon, dt=attrs.get("dt", defaults["DT"]), scheme=scheme)
        except NonPositiveParameter as exc:
            raise serializers.ValidationError({exc.name: [str(exc)]})
        except DriftError as exc:
            raise serializers.ValidationError({"dt": [str(exc)]})
        try:
            check_admissible(params, scheme)
        except SchemeInadmissible as exc:
            raise serializers.ValidationError({"scheme": [str(exc)]})

        try:
            attrs["experiment"] = ExperimentConfig(
                params=params,
                sim=sim,
                replications=attrs.get("replications", defaults["REPLICATIONS"]),
                checkpoints=checkpoints,
                base_seed=attrs.get("base_seed", defaults["BASE_SEED"]),
                estimators=attrs.get("estimators", ESTIMATORS),
                inv_floor=attrs.get("inv_floor", defaults["INV_FLOOR"]),
            )
        except DriftError as exc:
            raise serializers.ValidationError({"checkpoints": [str(exc)]})
        return attrs


def first_error(errors):
    """InvalidConfig for the first offending key of a serializer's errors."""
    key, messages = next(iter(errors.items()))
    if isinstance(messages, (list, tuple)):
        message = "; ".join(str(m) for m in messages)
    else:
        message = str(messages)
    if key == "non_field_errors":
        key = "config"
    return InvalidConfig(key, message)
