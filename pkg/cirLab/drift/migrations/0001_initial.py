import django.db.models.deletion
import django.utils.timezone
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('a', models.FloatField()),
                ('b', models.FloatField()),
                ('sigma', models.FloatField()),
                ('r0', models.FloatField()),
                ('dt', models.FloatField()),
                ('scheme', models.CharField(choices=[('euler_full_truncation', 'Euler, full truncation'), ('drift_implicit_sqrt', 'Drift-implicit square root')], max_length=32)),
                ('replications', models.PositiveIntegerField()),
                ('checkpoints', models.JSONField(default=list)),
                ('estimators', models.JSONField(default=list)),
                ('base_seed', models.CharField(max_length=20)),
                ('inv_floor', models.FloatField()),
                ('workers', models.PositiveIntegerField(default=1)),
                ('feller', models.BooleanField()),
                ('created', models.DateTimeField(default=django.utils.timezone.now)),
            ],
            options={
                'ordering': ['-created'],
            },
        ),
        migrations.CreateModel(
            name='RecordedCell',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('estimator', models.CharField(choices=[('mle', 'Maximum likelihood'), ('alternative', 'Alternative (int r, int r^2)')], max_length=16)),
                ('param', models.CharField(choices=[('a', 'a'), ('b', 'b')], max_length=1)),
                ('horizon', models.FloatField()),
                ('mean', models.FloatField(blank=True, null=True)),
                ('std', models.FloatField(blank=True, null=True)),
                ('n_ok', models.PositiveIntegerField()),
                ('n_fail', models.PositiveIntegerField()),
                ('failures', models.JSONField(blank=True, default=dict)),
                ('flagged', models.BooleanField(default=False)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='cells', to='drift.experimentrun')),
            ],
            options={
                'ordering': ['id'],
            },
        ),
    ]
