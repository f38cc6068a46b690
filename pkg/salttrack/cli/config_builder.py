from argparse import ArgumentParser, Namespace, ArgumentTypeError
from typing import Dict, Any, Optional

from .options import integer_type, odd_integer_type, float_type, dict_type, dims_type, int_list_type
from ..synthgen import SynthSpec
from ..texture import GlcmConfig, DIRECTION_OFFSETS
from ..tracking import TrackerConfig, Variant

VARIANTS = {variant.value: variant for variant in Variant}


class TrackerConfigBuilder:
    def __init__(self):
        self.options: Dict[str, Any] = {}
        self.glcm_options: Dict[str, Any] = {}

    def glcm(self, radius: int, levels: int, directions=None, distances=None) -> "TrackerConfigBuilder":
        self.glcm_options = {"radius": radius, "levels": levels}
        if directions is not None:
            self.glcm_options["directions"] = tuple(directions)
        if distances is not None:
            self.glcm_options["distances"] = tuple(distances)
        return self

    def set(self, name: str, value: Any) -> "TrackerConfigBuilder":
        if value is not None:
            self.options[name] = value
        return self

    def get(self) -> TrackerConfig:
        try:
            return TrackerConfig(glcm=GlcmConfig(**self.glcm_options), **self.options)
        except ValueError as e:
            raise ArgumentTypeError(str(e))


def init_glcm_args_parser(argparse: ArgumentParser):
    group = argparse.add_argument_group("texture options")
    group.add_argument("--radius", dest="glcm_radius", help="radius of the GLCM analysis window",
                       default=4, metavar="R", type=integer_type(1))
    group.add_argument("--levels", dest="glcm_levels", help="number of quantization levels",
                       default=32, metavar="N", type=integer_type(2))
    group.add_argument("--directions", dest="glcm_directions", default=None, metavar="DEGREES",
                       help="comma separated offset directions out of 0, 45, 90 and 135",
                       type=int_list_type(dict_type({str(d): d for d in DIRECTION_OFFSETS})))
    group.add_argument("--distances", dest="glcm_distances", default=None, metavar="LIST",
                       help="comma separated offset distances, 1..R by default",
                       type=int_list_type(integer_type(1)))


def init_tracker_args_parser(argparse: ArgumentParser):
    group = argparse.add_argument_group("tracker options")
    group.add_argument("--variant", help="tracking method", default=Variant.FULL, metavar="NAME",
                       type=dict_type(VARIANTS))
    group.add_argument("--patch", help="patch dimensions", default=(31, 31), metavar="I1xI2",
                       type=dims_type(2, element=odd_integer_type(3)))
    group.add_argument("--subspace", help="subspace dimensions", default=(15, 15, 5), metavar="P1,P2,P3",
                       type=dims_type(3))
    group.add_argument("--threshold", help="reconstruction error threshold of tensor classification",
                       default=3.0, metavar="T", type=float_type(0.0, exclusive=True))
    group.add_argument("--contrast-floor", dest="contrast_floor", default=1e-3, metavar="EPS",
                       help="lower clamp of contrast values before taking logarithms",
                       type=float_type(0.0, 1.0, exclusive=True))
    group.add_argument("--contrast-weight", dest="contrast_weight", default=None, metavar="W",
                       help="fixed weight of the contrast term instead of |log C|", type=float_type(0.0))
    group.add_argument("--median-window", dest="median_window", default=5, metavar="N",
                       help="window of the offset median filter", type=odd_integer_type(1))
    group.add_argument("--rejection", dest="rejection_px", default=3.0, metavar="PX",
                       help="largest accepted deviation from the median offset", type=float_type(0.0))
    group.add_argument("--normal-window", dest="normal_window", default=5, metavar="W",
                       help="half-width of the tangent fitting window", type=integer_type(1))
    group.add_argument("--chained", action="store_true",
                       help="track each inline from its already tracked neighbour")
    group.add_argument("--extended-scoring", dest="extended_scoring", action="store_true",
                       help="score each candidate against the tensors extended by its own patches")


def build_glcm_config(arguments: Namespace) -> GlcmConfig:
    try:
        return GlcmConfig(**_glcm_options(arguments))
    except ValueError as e:
        raise ArgumentTypeError(str(e))


def _glcm_options(arguments: Namespace) -> Dict[str, Any]:
    options = {"radius": arguments.glcm_radius, "levels": arguments.glcm_levels}
    if arguments.glcm_directions is not None:
        options["directions"] = tuple(arguments.glcm_directions)
    if arguments.glcm_distances is not None:
        options["distances"] = tuple(arguments.glcm_distances)
    return options


def build_tracker_config(arguments: Namespace) -> TrackerConfig:
    builder = TrackerConfigBuilder().glcm(**_glcm_options(arguments))
    for name in ("variant", "contrast_floor", "contrast_weight", "median_window", "rejection_px",
                 "normal_window"):
        builder.set(name, getattr(arguments, name))
    return (builder.set("patch_dims", arguments.patch)
            .set("subspace_dims", arguments.subspace)
            .set("error_threshold", arguments.threshold)
            .set("chained", arguments.chained)
            .set("extended_scoring", arguments.extended_scoring)
            .get())


def init_synth_args_parser(argparse: ArgumentParser):
    group = argparse.add_argument_group("synthetic volume options")
    group.add_argument("--size", help="inline, crossline and time sample counts", default=(21, 200, 160),
                       metavar="IxXxT", type=dims_type(3))
    group.add_argument("--center", help="crossline and time sample of the dome base centre",
                       default=None, metavar="X,T", type=dims_type(2, min_value=0))
    group.add_argument("--radii", help="horizontal and vertical dome radii", default=(60, 70),
                       metavar="A,B", type=dims_type(2))
    group.add_argument("--drift", help="crossline shift of the dome per inline", default=1.0,
                       metavar="PX", type=float_type())
    group.add_argument("--noise", help="standard deviation of the noise", default=0.05,
                       metavar="SIGMA", type=float_type(0.0))
    group.add_argument("--seed", help="seed of the pseudorandom generator", default=0, metavar="N",
                       type=integer_type(0))
    group.add_argument("--margin", help="smallest distance between the dome and the section border",
                       default=15, metavar="PX", type=integer_type(0))


def build_synth_spec(arguments: Namespace) -> SynthSpec:
    size = tuple(arguments.size)
    center: Optional[tuple] = arguments.center
    if center is None:
        center = (size[1] / 2.0, size[2] * 11.0 / 16.0)
    try:
        return SynthSpec(dims=size, center=tuple(float(c) for c in center),
                         radii=tuple(float(r) for r in arguments.radii), drift=arguments.drift,
                         noise_sigma=arguments.noise, seed=arguments.seed, margin=arguments.margin)
    except ValueError as e:
        raise ArgumentTypeError(str(e))
