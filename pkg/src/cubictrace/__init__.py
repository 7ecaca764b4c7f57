"""Exact arithmetic for cubic trace forms, binary cubic/quadratic forms,
class groups, and the desk-scale verification campaigns built on them."""

__version__ = "0.1.0"

from .arith import fundamental_discriminants, is_fundamental_discriminant
from .cforms import CubicForm, cubic_equivalent, enumerate_fundamental, fields_by_discriminant
from .cubes import Cube, GaussianCubicForm, cube_class, field_cube, phi1, verify_grouprel2
from .fields import CubicFieldRecord, Undecided, make_record, splitting_type
from .qforms import ClassGroup, QuadraticForm, class_group, compose, reduce_form
from .survey import SurveyReport, gk_element, run_survey, scholz_check, write_report
from .tracelat import (
    C_form,
    explicit_trace_form,
    full_gram,
    trace_zero_sublattice,
    verify_caso3,
    verify_grouprel,
)
