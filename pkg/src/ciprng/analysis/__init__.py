from .battery import (
    PASS_BAND,
    AlternatingSource,
    ConstantSource,
    TestReport,
    WordSource,
    autocorrelation_test,
    chi_square_uniformity,
    format_report,
    monobit_test,
    run_battery,
    runs_test,
    serial_test,
)
from .bench import BenchEntry, format_bench, throughput_bench
from .export import decode_stream, encode_stream, export_stream
from .security import (
    SensitivityResult,
    point_cloud,
    sensitivity_experiment,
    variance_ratio,
    write_point_cloud_csv,
    write_sensitivity_csv,
)
