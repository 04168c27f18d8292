/** Wire types mirrored from the /api/v1 JSON payloads. */

export type Role = "admin" | "doctor" | "medical_student" | "designer" | "patient";

export interface ApiErrorBody {
  code: string;
  message: string;
}

export interface UserOut {
  user_id: string;
  name: string;
  email: string;
  role: Role;
  created_at: number;
}

export interface Session {
  token: string;
  user: UserOut;
}

export interface ThresholdRuleWire {
  rule_id: string;
  patient_user_id: string;
  parameter: string;
  min: number | null;
  max: number | null;
  severity: string;
  enabled: boolean;
}

export interface SeriesBucket {
  bucket_start_t: number;
  bucket_width_s: number;
  count: number;
  mean: number;
  min: number;
  max: number;
}

export interface SeriesResponse {
  parameter: string;
  buckets: SeriesBucket[];
}

export interface AlertWire {
  alert_id: string;
  rule_id: string;
  patient_user_id: string;
  sensor_id: string;
  t: number;
  value: number;
  severity: string;
  state: "active" | "resolved";
  created_at: number;
  resolved_at: number | null;
}

export interface RoomWire {
  room_id: string;
  polygon: number[][];
}

export interface AnchorWire {
  anchor_id: string;
  position: number[];
  mount_height: number;
}

export interface LayoutWire {
  rooms: RoomWire[];
  anchors: AnchorWire[];
}

export interface LocationWire {
  location_id: string;
  name: string;
  layout: LayoutWire;
}

export interface SensorWire {
  sensor_id: string;
  kind: string;
  location_id: string;
  room_id: string;
  position: number[] | null;
}

export interface ProjectWire {
  project_id: string;
  patient_user_id: string;
  locations: LocationWire[];
  sensors: SensorWire[];
}

export interface PositionWire {
  t: number;
  xy: number[] | null;
  residual_rms_m: number | null;
  room_id: string | null;
  anchors_used: number;
}

export interface ActivityWire {
  label: string;
  scores: Record<string, number>;
  window_start_t: number;
}

/** Chart-ready series: points carried verbatim from SeriesBucket payloads. */
export interface ViewModelSeries {
  parameter: string;
  unit: string;
  points: { t: number; mean: number; min: number; max: number }[];
}
