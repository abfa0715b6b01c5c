"""Slotted MapReduce engine with full counter accounting."""

from minigrid.mrengine import wordcount  # registers the built-in job
from minigrid.mrengine.engine import Engine
from minigrid.mrengine.jobtracker import JobSpec, JobState, JobTracker, TrackerInfo
from minigrid.mrengine.registry import get_job, job_names, register_function, register_job
from minigrid.mrengine.tasktracker import TaskTracker
from minigrid.mrengine.types import CounterSet, InputSplit, format_counters

__all__ = [
    "CounterSet",
    "Engine",
    "InputSplit",
    "JobSpec",
    "JobState",
    "JobTracker",
    "TaskTracker",
    "TrackerInfo",
    "format_counters",
    "get_job",
    "job_names",
    "register_function",
    "register_job",
    "wordcount",
]
